//! Sparse multivariate polynomials over an exact field.

mod ideal;
mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::field::Field;

pub use ideal::Ideal;
pub use monomial::{count_monomials, monomials_of_degree, Monomial};
pub use parse::parse_polynomial;

pub(crate) use monomial::binomial;

/// A polynomial in `k[x_0, ..., x_n]` with no stored zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Self {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, j: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::var(nvars, j), field.one())])
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        let nvars = m.nvars();
        Self::from_terms(field, nvars, [(m, field.one())])
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial in the wrong ring");
            p.add_term(m, c);
        }
        p
    }

    /// Integer coefficients, given as exponent vectors.
    pub fn from_int_terms(field: &F, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), field.from_i64(*c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in grevlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Degree of the top term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|f, c| f.neg(c))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self::zero(&self.field, self.nvars);
        }
        self.map_coefficients(|f, c| f.mul(s, c))
    }

    fn map_coefficients(&self, op: impl Fn(&F, &F::Elem) -> F::Elem) -> Self {
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), op(&self.field, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Schoolbook product.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `dP/dx_j`; terms whose exponent vanishes in the field are dropped.
    pub fn partial_derivative(&self, j: usize) -> Self {
        assert!(j < self.nvars, "variable index out of range");
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(j) {
                let e = self.field.from_bigint(&BigInt::from(m.exponent(j)));
                out.add_term(q, self.field.mul(&e, c));
            }
        }
        out
    }

    /// Whether only the first `k` variables occur.
    pub fn supported_below(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.supported_below(k))
    }

    /// Canonical text: grevlex-descending terms, explicit `*` and `^`.
    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let mut coeff = self.field.render(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if coeff != "1" || m.degree() == 0 {
                if coeff.contains('/') {
                    factors.push(format!("({coeff})"));
                } else {
                    factors.push(coeff);
                }
            }
            for (j, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[j].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[j].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|j| format!("x{j}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Default variable names `x0, ..., x{nvars-1}`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|j| format!("x{j}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn derivatives() {
        let f = PrimeField::default();
        let x0sq = Polynomial::from_int_terms(&f, 2, &[(1, &[2, 0])]);
        assert_eq!(
            x0sq.partial_derivative(0),
            Polynomial::from_int_terms(&f, 2, &[(2, &[1, 0])])
        );
        let x1cube = Polynomial::from_int_terms(&f, 2, &[(1, &[0, 3])]);
        assert!(x1cube.partial_derivative(0).is_zero());

        let f3 = PrimeField::new(3).unwrap();
        let x0cube = Polynomial::from_int_terms(&f3, 2, &[(1, &[3, 0])]);
        assert!(x0cube.partial_derivative(0).is_zero());
    }

    #[test]
    fn products() {
        let q = Rationals;
        let p = Polynomial::from_int_terms(&q, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let m = Polynomial::from_int_terms(&q, 2, &[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(
            p.multiply(&m),
            Polynomial::from_int_terms(&q, 2, &[(1, &[2, 0]), (-1, &[0, 2])])
        );
        assert_eq!(p.multiply(&Polynomial::one(&q, 2)), p);
    }

    #[test]
    fn rendering() {
        let f = PrimeField::default();
        let p = Polynomial::from_int_terms(
            &f,
            3,
            &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (-1, &[2, 0, 1])],
        );
        assert_eq!(p.render(&["x", "y", "z"]), "-x^3 - x^2*z + y^2*z");
        assert_eq!(Polynomial::one(&f, 3).render(&["x", "y", "z"]), "1");
        assert_eq!(Polynomial::zero(&f, 3).render(&["x", "y", "z"]), "0");
    }
}
