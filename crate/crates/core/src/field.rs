//! Exact coefficient fields.
//!
//! Two backends implement [`Field`]: [`PrimeField`] (elements are canonical
//! residues `0 <= v < p` stored as `u64`) and [`Rationals`] (reduced
//! [`BigRational`]s with positive denominator). Every algorithm in the crate
//! is generic over the field, so the same code path is exercised by both
//! backends.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus when none is given.
pub const DEFAULT_PRIME: u64 = 10007;

/// Exact field arithmetic on an associated element type.
///
/// Elements carry no reference to their field; the field value is passed
/// explicitly to every operation.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Image of an integer under `Z -> k`.
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn spec(&self) -> FieldSpec;

    /// Signed integer (or fraction) text of an element, used by the renderer.
    fn render(&self, a: &Self::Elem) -> String;

    /// Rough storage cost of an element, used to order elimination rows.
    fn weight(&self, _a: &Self::Elem) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst -= factor * src`
    fn sub_mul_assign(&self, dst: &mut Self::Elem, factor: &Self::Elem, src: &Self::Elem) {
        let t = self.mul(factor, src);
        *dst = self.sub(dst, &t);
    }
}

/// The prime field F_p, for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!(
                "modulus {p} does not fit in 32 bits"
            )));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::ZeroInverse);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.element(t0))
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    fn render(&self, a: &u64) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }

    #[inline]
    fn sub_mul_assign(&self, dst: &mut u64, factor: &u64, src: &u64) {
        let t = factor * src % self.p;
        *dst = if *dst >= t {
            *dst - t
        } else {
            *dst + self.p - t
        };
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(a.recip())
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn weight(&self, a: &BigRational) -> u64 {
        a.numer().abs().bits() + a.denom().bits()
    }
}

/// Which coefficient field a computation runs over.
///
/// Serialized as `{"type": "prime", "p": 10007}` or `{"type": "rational"}`;
/// parsed from the command line as `prime:10007` or `rational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime {
        #[serde(default = "default_prime")]
        p: u64,
    },
    Rational,
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime { p: DEFAULT_PRIME }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::Prime { p } = self {
            PrimeField::new(*p)?;
        }
        Ok(())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "prime:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "rational" | "Q" => FieldSpec::Rational,
            "prime" => FieldSpec::default(),
            _ => {
                let digits = s
                    .strip_prefix("prime:")
                    .ok_or_else(|| Error::InvalidField(format!("unrecognized field `{s}`")))?;
                let p = digits
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidField(format!("bad modulus `{digits}`")))?;
                FieldSpec::Prime { p }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Convenience wrapper for [`Field::inv`].
pub fn field_inverse<F: Field>(field: &F, a: &F::Elem) -> Result<F::Elem> {
    field.inv(a)
}
