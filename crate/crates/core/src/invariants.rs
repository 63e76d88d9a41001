//! Hilbert polynomials, curve invariants and the verification drivers.
//!
//! Every identity here holds only for large `l`, and no effective bound is
//! available, so dimension sequences are fitted on the longest suffix of the
//! sampled window that a low-degree polynomial reproduces exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{binomial, count_monomials, Polynomial};
use crate::slices::GradedIdeal;
use crate::Ideal;

/// Extra matching samples demanded beyond the `deg + 1` that determine a fit.
pub const GUARD_POINTS: usize = 2;

/// Column cap for the default window.
pub const MAX_DEFAULT_COLUMNS: usize = 5000;

/// Inclusive range of degrees `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: u32,
    pub hi: u32,
}

impl Window {
    pub fn new(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Input(format!("empty window {lo}:{hi}")));
        }
        Ok(Self { lo, hi })
    }

    /// `l` from 1 to `max(2 * max_deg + n + 4, 12)`, shrunk until
    /// `dim S_hi <= 5000`.
    pub fn default_for<F: Field>(ideal: &Ideal<F>) -> Self {
        let n = ideal.ambient_dim() as u32;
        let mut hi = (2 * ideal.max_generator_degree() + n + 4).max(12);
        while hi > 1 && count_monomials(ideal.nvars(), hi) > MAX_DEFAULT_COLUMNS {
            hi -= 1;
        }
        Self { lo: 1, hi }
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl std::str::FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("window must look like LO:HI, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Input(format!("bad window bound `{t}`")))
        };
        Window::new(parse(a)?, parse(b)?)
    }
}

/// A polynomial in `l` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, l: i64) -> BigRational {
        let x = BigRational::from_integer(l.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Integer coefficient of `l^k`, if it is an integer.
    pub fn int_coeff(&self, k: usize) -> Option<i64> {
        let c = self
            .coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let text = if a.is_integer() {
                a.to_string()
            } else {
                format!("({a})")
            };
            match k {
                0 => write!(f, "{text}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{text}*")?;
                    }
                    if k == 1 {
                        write!(f, "l")?;
                    } else {
                        write!(f, "l^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Dimensions over a window and the polynomial they settle into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRecord {
    pub samples: Vec<(u32, i64)>,
    pub skipped: Vec<u32>,
    pub stable_from: u32,
    pub degree: usize,
    /// Lowest degree first.
    pub coefficients: HilbertPolynomial,
    pub polynomial: String,
}

impl HilbertRecord {
    pub fn polynomial(&self) -> &HilbertPolynomial {
        &self.coefficients
    }

    /// `(d, p_a)` from `d l + 1 - p_a`, if the record is linear with integer
    /// coefficients.
    pub fn as_curve(&self) -> Option<(i64, i64)> {
        let p = &self.coefficients;
        if p.degree() != 1 {
            return None;
        }
        Some((p.int_coeff(1)?, 1 - p.int_coeff(0)?))
    }

    pub fn stable_samples(&self) -> impl Iterator<Item = &(u32, i64)> {
        self.samples
            .iter()
            .filter(move |(l, _)| *l >= self.stable_from)
    }
}

/// Newton divided differences through `(x_i, y_i)`, expanded to the monomial
/// basis.
fn interpolate(points: &[(i64, i64)]) -> HilbertPolynomial {
    let xs: Vec<BigRational> = points
        .iter()
        .map(|&(x, _)| BigRational::from_integer(x.into()))
        .collect();
    let mut c: Vec<BigRational> = points
        .iter()
        .map(|&(_, y)| BigRational::from_integer(y.into()))
        .collect();
    let n = c.len();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form, in the monomial basis
    let mut acc = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // acc = acc * (x - x_i) + c_i
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if acc[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &acc[k];
            }
            next[k] -= &acc[k] * &xs[i];
        }
        next[0] += &c[i];
        acc = next;
    }
    HilbertPolynomial::new(acc)
}

/// Fits the lowest-degree polynomial that reproduces a suffix of at least
/// `deg + 1 + GUARD_POINTS` consecutive samples ending at the window top.
pub fn fit_hilbert(samples: Vec<(u32, i64)>, skipped: Vec<u32>) -> Result<HilbertRecord> {
    let mut samples = samples;
    samples.sort_by_key(|s| s.0);
    let pts: Vec<(i64, i64)> = samples.iter().map(|&(l, d)| (i64::from(l), d)).collect();
    let n = pts.len();
    for deg in 0.. {
        let need = deg + 1 + GUARD_POINTS;
        if need > n {
            break;
        }
        let poly = interpolate(&pts[n - deg - 1..]);
        let run = pts
            .iter()
            .rev()
            .take_while(|&&(x, y)| poly.eval(x) == BigRational::from_integer(BigInt::from(y)))
            .count();
        if run >= need {
            let stable_from = samples[n - run].0;
            return Ok(HilbertRecord {
                polynomial: poly.to_string(),
                degree: poly.degree(),
                coefficients: poly,
                samples,
                skipped,
                stable_from,
            });
        }
    }
    Err(Error::NoStabilization(format!(
        "{n} samples do not end in a polynomial run with {GUARD_POINTS} guard points"
    )))
}

/// Evaluates `dim_fn` over the window (in parallel) and fits the result.
/// `Ok(None)` marks a skipped degree.
pub fn hilbert_data(
    window: Window,
    dim_fn: impl Fn(u32) -> Result<Option<usize>> + Sync,
) -> Result<HilbertRecord> {
    let degrees: Vec<u32> = window.degrees().collect();
    let dims = degrees
        .par_iter()
        .map(|&l| dim_fn(l).map(|d| (l, d)))
        .collect::<Result<Vec<_>>>()?;
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for (l, d) in dims {
        match d {
            Some(d) => samples.push((l, d as i64)),
            None => skipped.push(l),
        }
    }
    fit_hilbert(samples, skipped)
}

/// Hilbert record of `S/I` over the window.
pub fn quotient_record<F: Field>(g: &GradedIdeal<F>, window: Window) -> Result<HilbertRecord> {
    hilbert_data(window, |l| Ok(Some(g.quotient(l).dim_quotient())))
}

/// Hilbert record of `l -> dim Gamma(Omega_C(l))`, skipping degrees the
/// characteristic divides.
pub fn omega_record<F: Field>(g: &GradedIdeal<F>, window: Window) -> Result<HilbertRecord> {
    let window = Window::new(window.lo.max(1), window.hi)?;
    hilbert_data(window, |l| {
        if g.degree_valid(l) {
            g.omega_slice_dim(l).map(Some)
        } else {
            Ok(None)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub d: i64,
    pub p_a: i64,
    pub g_plus_mu: Option<i64>,
    pub mu: Option<i64>,
}

/// `d` and `p_a` from the Hilbert polynomial `d l + 1 - p_a` of `S/I`.
pub fn curve_invariants<F: Field>(g: &GradedIdeal<F>, window: Window) -> Result<CurveInvariants> {
    let rec = quotient_record(g, window)?;
    curve_from_record(&rec)
}

pub fn curve_from_record(rec: &HilbertRecord) -> Result<CurveInvariants> {
    if rec.degree != 1 {
        return Err(Error::NotACurve(rec.degree));
    }
    let (d, p_a) = rec.as_curve().ok_or_else(|| {
        Error::NoStabilization(format!(
            "non-integral Hilbert polynomial {}",
            rec.polynomial
        ))
    })?;
    Ok(CurveInvariants {
        d,
        p_a,
        g_plus_mu: None,
        mu: None,
    })
}

/// `g~ + mu` from the differentials polynomial `d l + g~ - 1 + mu`; the
/// leading coefficient must equal `d`.
pub fn mu_plus_gtilde<F: Field>(g: &GradedIdeal<F>, window: Window) -> Result<i64> {
    let inv = curve_invariants(g, window)?;
    let omega = omega_record(g, window)?;
    g_plus_mu_from_record(&inv, &omega)
}

pub fn g_plus_mu_from_record(inv: &CurveInvariants, omega: &HilbertRecord) -> Result<i64> {
    let p = omega.polynomial();
    let lead = if p.degree() == 1 {
        p.int_coeff(1)
    } else {
        None
    };
    if lead != Some(inv.d) {
        return Err(Error::LeadingMismatch {
            expected: inv.d.to_string(),
            found: omega.polynomial.clone(),
        });
    }
    let constant = p.int_coeff(0).ok_or_else(|| Error::LeadingMismatch {
        expected: inv.d.to_string(),
        found: omega.polynomial.clone(),
    })?;
    Ok(constant + 1)
}

/// `mu = (g~ + mu) - g~`; negative values are returned as computed.
pub fn mu_given_genus(inv: &CurveInvariants, g_tilde: i64) -> Option<i64> {
    inv.g_plus_mu.map(|s| s - g_tilde)
}

fn binom_i(a: i64, k: i64) -> u128 {
    if a < 0 || k < 0 || a < k {
        0
    } else {
        binomial(a as u64, k as u64)
    }
}

/// Codimension of `(f, x_{b+2}, ..., x_n)^2` in `S_l` for `deg f = d`:
/// `C(l+b+1, b+1) - C(l-2d+b+1, b+1) + (n-b-1) (C(l+b, b+1) - C(l-d+b, b+1))`.
pub fn beta_closed_form(n: u32, b: u32, d: u32, l: u32) -> Result<u128> {
    if n == 0 || b > n - 1 {
        return Err(Error::Domain(format!(
            "need 0 <= b <= n - 1, got n={n}, b={b}"
        )));
    }
    if d == 0 {
        return Err(Error::Domain("need d >= 1".into()));
    }
    if l < 2 * d {
        return Err(Error::Domain(format!("need l >= 2d, got l={l}, d={d}")));
    }
    let (n, b, d, l) = (i64::from(n), i64::from(b), i64::from(d), i64::from(l));
    let head = binom_i(l + b + 1, b + 1) - binom_i(l - 2 * d + b + 1, b + 1);
    let tail = binom_i(l + b, b + 1) - binom_i(l - d + b, b + 1);
    Ok(head + (n - b - 1) as u128 * tail)
}

/// The ideal `(f, x_{b+2}, ..., x_n)` with `f` a form in the first `b + 2`
/// variables.
pub fn beta_ideal<F: Field>(n: u32, b: u32, f: &Polynomial<F>) -> Result<Ideal<F>> {
    if n == 0 || b > n - 1 {
        return Err(Error::Domain(format!(
            "need 0 <= b <= n - 1, got n={n}, b={b}"
        )));
    }
    let nvars = n as usize + 1;
    if f.nvars() != nvars {
        return Err(Error::Domain(format!(
            "f must live in {nvars} variables, has {}",
            f.nvars()
        )));
    }
    if f.is_zero() || !f.is_homogeneous() {
        return Err(Error::Domain("f must be a nonzero form".into()));
    }
    if !f.supported_below(b as usize + 2) {
        return Err(Error::Domain(format!(
            "f may only involve the first {} variables",
            b + 2
        )));
    }
    let mut gens = vec![f.clone()];
    for i in (b as usize + 2)..nvars {
        gens.push(Polynomial::var(f.field(), nvars, i));
    }
    let names = crate::poly::default_names(nvars);
    Ideal::new(f.field().clone(), names, gens)
}

/// Codimension of `((f, x_{b+2}, ..., x_n)^2)_l` in `S_l`, by elimination.
pub fn beta_bruteforce<F: Field>(n: u32, b: u32, f: &Polynomial<F>, l: u32) -> Result<usize> {
    let ideal = beta_ideal(n, b, f)?;
    Ok(GradedIdeal::new(ideal).ideal_square_slice(l).codim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub l: u32,
    pub expected: String,
    pub computed: String,
}

/// Outcome of one verification over a set of degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub degrees: Vec<u32>,
    pub first_failure: Option<Failure>,
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Skip,
            degrees: Vec::new(),
            first_failure: None,
            detail: Some(why.into()),
        }
    }

    pub fn errored(name: &str, err: &Error) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Error,
            degrees: Vec::new(),
            first_failure: None,
            detail: Some(err.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs `check` at every degree (in parallel) and reports the first failure.
fn per_degree(
    name: &str,
    degrees: Vec<u32>,
    detail: Option<String>,
    check: impl Fn(u32) -> Result<Option<Failure>> + Sync,
) -> Result<CheckReport> {
    let outcomes = degrees
        .par_iter()
        .map(|&l| check(l))
        .collect::<Result<Vec<_>>>()?;
    let first_failure = outcomes.into_iter().flatten().next();
    Ok(CheckReport {
        name: name.into(),
        verdict: if first_failure.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        degrees,
        first_failure,
        detail,
    })
}

fn valid_degrees<F: Field>(g: &GradedIdeal<F>, window: Window, from: u32) -> Vec<u32> {
    window
        .degrees()
        .filter(|&l| l >= from.max(1) && g.degree_valid(l))
        .collect()
}

/// `(I^2)_l ⊆ (W_C)_l ⊆ I_l` at every valid degree of the window.
pub fn nesting_check<F: Field>(g: &GradedIdeal<F>, window: Window) -> Result<CheckReport> {
    let field = g.field().clone();
    per_degree("nesting", valid_degrees(g, window, 1), None, |l| {
        let sq = g.ideal_square_slice(l).space;
        let w = g.singular_slice(l)?.space;
        let i = g.ideal_slice(l).space;
        let lower = sq.is_subspace_of(&field, &w)?;
        let upper = w.is_subspace_of(&field, &i)?;
        Ok((!(lower && upper)).then(|| Failure {
            l,
            expected: "I^2 ⊆ W ⊆ I".into(),
            computed: format!("I^2 ⊆ W: {lower}, W ⊆ I: {upper}"),
        }))
    })
}

/// `(W_C)_l = (I^2)_l` for degrees `l >= from`.
pub fn lci_check<F: Field>(g: &GradedIdeal<F>, window: Window, from: u32) -> Result<CheckReport> {
    per_degree(
        "lci",
        valid_degrees(g, window, from),
        Some(format!("compared from l = {}", from.max(1))),
        |l| {
            let sq = g.ideal_square_slice(l);
            let w = g.singular_slice(l)?;
            Ok((sq.space != w.space).then(|| Failure {
                l,
                expected: format!("dim (I^2)_l = {}", sq.dim()),
                computed: format!("dim (W_C)_l = {}", w.dim()),
            }))
        },
    )
}

/// Expected codimension `n d l + 1 + (n+1)(1 - d - p_a) - (g~ + mu)`.
pub fn codim_formula(n: i64, d: i64, p_a: i64, g_plus_mu: i64, l: i64) -> i64 {
    n * d * l + 1 + (n + 1) * (1 - d - p_a) - g_plus_mu
}

/// `dim S_l - dim (W_C)_l` against [`codim_formula`] for valid `l >= from`.
pub fn verify_codim_formula<F: Field>(
    g: &GradedIdeal<F>,
    inv: &CurveInvariants,
    g_plus_mu: i64,
    window: Window,
    from: u32,
) -> Result<CheckReport> {
    let n = g.n() as i64;
    per_degree(
        "codim_formula",
        valid_degrees(g, window, from),
        Some(format!(
            "codim (W_C)_l = {}",
            HilbertPolynomial::from_ints(&[
                codim_formula(n, inv.d, inv.p_a, g_plus_mu, 0),
                n * inv.d
            ])
        )),
        |l| {
            let expected = codim_formula(n, inv.d, inv.p_a, g_plus_mu, i64::from(l));
            let computed = g.singular_slice(l)?.codim() as i64;
            Ok((expected != computed).then(|| Failure {
                l,
                expected: expected.to_string(),
                computed: computed.to_string(),
            }))
        },
    )
}

/// Plane-curve identity: the differentials polynomial is `d l + p_a - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneTheoremReport {
    pub expected: String,
    pub computed: String,
    pub omega: HilbertRecord,
}

pub fn verify_plane_theorem<F: Field>(
    g: &GradedIdeal<F>,
    window: Window,
) -> Result<PlaneTheoremReport> {
    if g.n() != 2 || g.ideal().generators().len() != 1 {
        return Err(Error::Domain(
            "the plane-curve check needs one generator in three variables".into(),
        ));
    }
    let inv = curve_invariants(g, window)?;
    let omega = omega_record(g, window)?;
    let expected = HilbertPolynomial::from_ints(&[inv.p_a - 1, inv.d]);
    if *omega.polynomial() != expected {
        return Err(Error::TheoremViolation {
            expected: expected.to_string(),
            computed: omega.polynomial.clone(),
        });
    }
    Ok(PlaneTheoremReport {
        expected: expected.to_string(),
        computed: omega.polynomial.clone(),
        omega,
    })
}
