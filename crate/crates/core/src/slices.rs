//! Degree-by-degree linear algebra for an ideal `I` of `S = k[x_0..x_n]`.
//!
//! Everything is computed inside a fixed degree `l`, in the monomial basis
//! of `S_l` ordered grevlex-descending:
//!
//! * `I_l`: span of generator multiples (no saturation).
//! * `(I^2)_l`: span of multiples of the products `g_i g_j`.
//! * `(S/I)_l`: coordinates on the non-pivot monomials of `I_l`'s RREF.
//! * `K_l = ker((S/I)_{l-1}^{n+1} -> (S/I)_l, (A_j) -> sum x_j A_j)`, the
//!   degree-`l` piece of `Omega_{P^n} / I Omega_{P^n}` read off the Euler
//!   sequence.
//! * `(W_C)_l = { F in S_l : dF/dx_j in I_{l-1} for all j }`, the forms
//!   singular along `V(I)`. This agrees with the chart-wise condition when
//!   the characteristic does not divide `l`, which is enforced.
//! * `dim Gamma(Omega_C(l)) = dim K_l - dim I_l + dim (W_C)_l` for large `l`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::poly::{count_monomials, monomials_of_degree, Ideal, Monomial, Polynomial};

/// Monomials of one degree together with their column indices.
#[derive(Debug)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        self.index[m]
    }

    pub fn to_dense<F: Field>(&self, p: &Polynomial<F>) -> Vec<F::Elem> {
        let field = p.field();
        let mut v = vec![field.zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.index_of(m)] = c.clone();
        }
        v
    }

    pub fn to_polynomial<F: Field>(&self, field: &F, v: &[F::Elem]) -> Polynomial<F> {
        let nvars = self.monomials.first().map_or(0, Monomial::nvars);
        Polynomial::from_terms(
            field,
            nvars,
            self.monomials
                .iter()
                .zip(v)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// The graded piece a [`DegreeSlice`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ambient {
    /// `S_degree`
    Forms { degree: u32 },
    /// `(S/I)_{degree-1}^{n+1}`
    EulerDomain { degree: u32, copies: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice<E> {
    pub degree: u32,
    pub ambient: Ambient,
    pub space: Subspace<E>,
}

impl<E: Clone + PartialEq> DegreeSlice<E> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }
}

/// `I_m` inside `S_m`, with the non-pivot monomials as a basis of `(S/I)_m`.
#[derive(Debug)]
pub struct QuotientSlice<E> {
    degree: u32,
    ideal: Subspace<E>,
    standard: Vec<usize>,
    coord: Vec<Option<usize>>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<E: Clone + PartialEq> QuotientSlice<E> {
    fn new(degree: u32, ideal: Subspace<E>) -> Self {
        let n = ideal.ambient_dim();
        let standard = ideal.free_columns();
        let mut coord = vec![None; n];
        for (k, &c) in standard.iter().enumerate() {
            coord[c] = Some(k);
        }
        let mut row_of_pivot = vec![None; n];
        for (i, &p) in ideal.pivots().iter().enumerate() {
            row_of_pivot[p] = Some(i);
        }
        Self {
            degree,
            ideal,
            standard,
            coord,
            row_of_pivot,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ideal(&self) -> &Subspace<E> {
        &self.ideal
    }

    pub fn dim_quotient(&self) -> usize {
        self.standard.len()
    }

    /// Column indices (in `S_m`) of the standard monomials.
    pub fn standard_columns(&self) -> &[usize] {
        &self.standard
    }

    /// `out += scale * [monomial col]` in quotient coordinates.
    pub fn add_monomial<F: Field<Elem = E>>(
        &self,
        field: &F,
        col: usize,
        scale: &E,
        out: &mut [E],
    ) {
        if let Some(k) = self.coord[col] {
            out[k] = field.add(&out[k], scale);
        } else {
            // the pivot row lies in I, so e_col is congruent to minus its tail
            let i = self.row_of_pivot[col].expect("pivot column");
            let row = self.ideal.basis().row(i);
            for (k, &c) in self.standard.iter().enumerate().filter(|(_, &c)| c > col) {
                if !field.is_zero(&row[c]) {
                    field.sub_mul_assign(&mut out[k], scale, &row[c]);
                }
            }
        }
    }

    /// Quotient coordinates of a dense vector of `S_m`.
    pub fn normal_form<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        self.ideal.reduce(field, &mut w);
        self.standard.iter().map(|&c| w[c].clone()).collect()
    }
}

/// One row of a per-degree table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub l: u32,
    pub dim_s: usize,
    pub dim_ideal: usize,
    pub dim_square: usize,
    /// `None` when the characteristic divides `l`.
    pub dim_singular: Option<usize>,
    pub dim_euler_kernel: usize,
    pub omega: Option<usize>,
}

type Memo<T> = Mutex<BTreeMap<u32, Arc<T>>>;

/// Write-once memo: the first completed value for a degree wins.
fn memoized<T>(memo: &Memo<T>, key: u32, compute: impl FnOnce() -> T) -> Arc<T> {
    if let Some(v) = memo.lock().expect("memo poisoned").get(&key) {
        return v.clone();
    }
    let v = Arc::new(compute());
    memo.lock()
        .expect("memo poisoned")
        .entry(key)
        .or_insert(v)
        .clone()
}

/// Graded pieces of an ideal, memoized by degree. Safe to share across threads.
#[derive(Debug)]
pub struct GradedIdeal<F: Field> {
    ideal: Ideal<F>,
    square: Vec<Polynomial<F>>,
    bases: Memo<MonomialBasis>,
    quotients: Memo<QuotientSlice<F::Elem>>,
    squares: Memo<Subspace<F::Elem>>,
    singular: Memo<Subspace<F::Elem>>,
}

fn multiples_span<F: Field>(
    field: &F,
    gens: &[Polynomial<F>],
    basis: &MonomialBasis,
) -> Subspace<F::Elem> {
    let m = basis.degree();
    let nvars = gens.first().map_or(0, Polynomial::nvars);
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().expect("nonzero generator");
        if dg > m {
            continue;
        }
        for mu in monomials_of_degree(nvars, m - dg) {
            let mut v = vec![field.zero(); basis.len()];
            for (t, c) in g.terms() {
                v[basis.index_of(&t.mul(&mu))] = c.clone();
            }
            rows.push(v);
        }
    }
    Subspace::span(field, basis.len(), rows)
}

impl<F: Field> GradedIdeal<F> {
    pub fn new(ideal: Ideal<F>) -> Self {
        let square = ideal.square().generators().to_vec();
        Self {
            ideal,
            square,
            bases: Mutex::default(),
            quotients: Mutex::default(),
            squares: Mutex::default(),
            singular: Mutex::default(),
        }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn field(&self) -> &F {
        self.ideal.field()
    }

    /// `n` of `P^n`.
    pub fn n(&self) -> usize {
        self.ideal.ambient_dim()
    }

    pub fn basis(&self, m: u32) -> Arc<MonomialBasis> {
        memoized(&self.bases, m, || MonomialBasis::new(self.ideal.nvars(), m))
    }

    pub fn dim_forms(&self, m: u32) -> usize {
        count_monomials(self.ideal.nvars(), m)
    }

    pub fn quotient(&self, m: u32) -> Arc<QuotientSlice<F::Elem>> {
        memoized(&self.quotients, m, || {
            let basis = self.basis(m);
            let span = multiples_span(self.field(), self.ideal.generators(), &basis);
            QuotientSlice::new(m, span)
        })
    }

    pub fn ideal_slice(&self, m: u32) -> DegreeSlice<F::Elem> {
        DegreeSlice {
            degree: m,
            ambient: Ambient::Forms { degree: m },
            space: self.quotient(m).ideal().clone(),
        }
    }

    fn square_space(&self, l: u32) -> Arc<Subspace<F::Elem>> {
        memoized(&self.squares, l, || {
            multiples_span(self.field(), &self.square, &self.basis(l))
        })
    }

    pub fn ideal_square_slice(&self, l: u32) -> DegreeSlice<F::Elem> {
        DegreeSlice {
            degree: l,
            ambient: Ambient::Forms { degree: l },
            space: (*self.square_space(l)).clone(),
        }
    }

    /// Matrix of `(A_j) -> sum_j x_j A_j` from `(S/I)_{l-1}^{n+1}` to `(S/I)_l`.
    fn euler_map(&self, l: u32) -> Result<Matrix<F::Elem>> {
        if l == 0 {
            return Err(Error::DegreeOutOfRange {
                degree: l,
                reason: "the Euler kernel needs l >= 1".into(),
            });
        }
        let field = self.field();
        let nvars = self.ideal.nvars();
        let (lower, upper) = (self.quotient(l - 1), self.quotient(l));
        let (bl, bu) = (self.basis(l - 1), self.basis(l));
        let q = lower.dim_quotient();
        let mut map = Matrix::zeros(field, upper.dim_quotient(), nvars * q);
        let one = field.one();
        let mut col = vec![field.zero(); upper.dim_quotient()];
        for j in 0..nvars {
            for (s, &c) in lower.standard_columns().iter().enumerate() {
                col.iter_mut().for_each(|x| *x = field.zero());
                let target = bu.index_of(&bl.monomials()[c].mul_var(j));
                upper.add_monomial(field, target, &one, &mut col);
                for (r, x) in col.iter().enumerate() {
                    map[(r, j * q + s)] = x.clone();
                }
            }
        }
        Ok(map)
    }

    pub fn euler_kernel(&self, l: u32) -> Result<DegreeSlice<F::Elem>> {
        let map = self.euler_map(l)?;
        Ok(DegreeSlice {
            degree: l,
            ambient: Ambient::EulerDomain {
                degree: l,
                copies: self.ideal.nvars(),
            },
            space: kernel_basis(self.field(), &map),
        })
    }

    /// Whether `(S/I)_{l-1}^{n+1} -> (S/I)_l` is onto, by a rank check.
    pub fn euler_surjective(&self, l: u32) -> Result<bool> {
        let k = self.euler_kernel(l)?;
        let domain = k.space.ambient_dim();
        Ok(domain - k.dim() == self.quotient(l).dim_quotient())
    }

    fn check_degree(&self, l: u32) -> Result<()> {
        if l == 0 {
            return Err(Error::DegreeOutOfRange {
                degree: l,
                reason: "singular forms need l >= 1".into(),
            });
        }
        let p = self.field().characteristic();
        if p != 0 && u64::from(l) % p == 0 {
            return Err(Error::CharDividesDegree { p, degree: l });
        }
        Ok(())
    }

    /// Whether degree `l` is usable by [`singular_slice`](Self::singular_slice).
    pub fn degree_valid(&self, l: u32) -> bool {
        self.check_degree(l).is_ok()
    }

    /// `(W_C)_l`: the kernel of `F -> (dF/dx_j mod I_{l-1})_j`.
    pub fn singular_slice(&self, l: u32) -> Result<DegreeSlice<F::Elem>> {
        self.check_degree(l)?;
        let space = memoized(&self.singular, l, || self.compute_singular(l));
        Ok(DegreeSlice {
            degree: l,
            ambient: Ambient::Forms { degree: l },
            space: (*space).clone(),
        })
    }

    fn compute_singular(&self, l: u32) -> Subspace<F::Elem> {
        let field = self.field();
        let nvars = self.ideal.nvars();
        let lower = self.quotient(l - 1);
        let (bl, bu) = (self.basis(l - 1), self.basis(l));
        let q = lower.dim_quotient();
        let mut map = Matrix::zeros(field, nvars * q, bu.len());
        let mut block = vec![field.zero(); q];
        for (i, m) in bu.monomials().iter().enumerate() {
            for j in 0..nvars {
                let Some(d) = m.div_var(j) else { continue };
                let e = field.from_i64(i64::from(m.exponent(j)));
                if field.is_zero(&e) {
                    continue;
                }
                block.iter_mut().for_each(|x| *x = field.zero());
                lower.add_monomial(field, bl.index_of(&d), &e, &mut block);
                for (r, x) in block.iter().enumerate() {
                    map[(j * q + r, i)] = x.clone();
                }
            }
        }
        let space = kernel_basis(field, &map);
        // l F = sum x_j dF/dx_j lies in I_l
        assert!(
            space
                .is_subspace_of(field, self.quotient(l).ideal())
                .expect("same ambient"),
            "singular forms escaped the ideal in degree {l}"
        );
        space
    }

    /// Basis of `(W_C)_l` as polynomials.
    pub fn singular_basis(&self, l: u32) -> Result<Vec<Polynomial<F>>> {
        let w = self.singular_slice(l)?;
        let basis = self.basis(l);
        Ok(w.space
            .basis()
            .iter_rows()
            .map(|r| basis.to_polynomial(self.field(), r))
            .collect())
    }

    /// `dim K_l - dim I_l + dim (W_C)_l`, the cokernel of `I_l -> K_l`.
    pub fn omega_slice_dim(&self, l: u32) -> Result<usize> {
        let w = self.singular_slice(l)?;
        let k = self.euler_kernel(l)?;
        let i = self.quotient(l).ideal().dim();
        Ok(k.dim() + w.dim() - i)
    }

    /// All per-degree dimensions at `l >= 1`.
    pub fn degree_row(&self, l: u32) -> Result<DegreeRow> {
        let dim_ideal = self.quotient(l).ideal().dim();
        let dim_euler_kernel = self.euler_kernel(l)?.dim();
        let dim_singular = match self.singular_slice(l) {
            Ok(w) => Some(w.dim()),
            Err(Error::CharDividesDegree { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(DegreeRow {
            l,
            dim_s: self.dim_forms(l),
            dim_ideal,
            dim_square: self.square_space(l).dim(),
            dim_singular,
            dim_euler_kernel,
            omega: dim_singular.map(|w| dim_euler_kernel + w - dim_ideal),
        })
    }
}

pub fn ideal_slice<F: Field>(ideal: &Ideal<F>, m: u32) -> DegreeSlice<F::Elem> {
    GradedIdeal::new(ideal.clone()).ideal_slice(m)
}

pub fn ideal_square_slice<F: Field>(ideal: &Ideal<F>, l: u32) -> DegreeSlice<F::Elem> {
    GradedIdeal::new(ideal.clone()).ideal_square_slice(l)
}

pub fn euler_kernel<F: Field>(ideal: &Ideal<F>, l: u32) -> Result<DegreeSlice<F::Elem>> {
    GradedIdeal::new(ideal.clone()).euler_kernel(l)
}

pub fn singular_slice<F: Field>(ideal: &Ideal<F>, l: u32) -> Result<DegreeSlice<F::Elem>> {
    GradedIdeal::new(ideal.clone()).singular_slice(l)
}

pub fn omega_slice_dim<F: Field>(ideal: &Ideal<F>, l: u32) -> Result<usize> {
    GradedIdeal::new(ideal.clone()).omega_slice_dim(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn plane(gens: &[&str]) -> Ideal<PrimeField> {
        Ideal::parse(PrimeField::default(), &["x", "y", "z"], gens).unwrap()
    }

    const NODAL: &str = "y^2*z - x^3 - x^2*z";

    #[test]
    fn ideal_slices() {
        assert_eq!(ideal_slice(&plane(&["x"]), 2).dim(), 3);
        assert_eq!(ideal_slice(&plane(&["x", "y"]), 1).dim(), 2);
        assert_eq!(ideal_slice(&plane(&[NODAL]), 4).dim(), 3);
        assert_eq!(ideal_slice(&plane(&[NODAL]), 2).dim(), 0);
    }

    #[test]
    fn square_slices() {
        assert_eq!(ideal_square_slice(&plane(&["x"]), 2).dim(), 1);
        assert_eq!(ideal_square_slice(&plane(&["x"]), 1).dim(), 0);
    }

    #[test]
    fn euler_kernels() {
        let empty = plane(&["x", "y", "z"]);
        assert_eq!(euler_kernel(&empty, 6).unwrap().dim(), 0);
        let g = GradedIdeal::new(plane(&[NODAL]));
        let k2 = g.euler_kernel(2).unwrap();
        assert_eq!(k2.space.ambient_dim(), 9);
        assert_eq!(k2.dim(), 3);
        assert_eq!(g.euler_kernel(10).unwrap().dim(), 51);
        assert!(g.euler_surjective(10).unwrap());
        assert!(g.euler_kernel(0).is_err());
    }

    #[test]
    fn singular_line_squared() {
        let w = singular_slice(&plane(&["x"]), 2).unwrap();
        assert_eq!(w.dim(), 1);
        assert_eq!(w.codim(), 5);
    }

    #[test]
    fn nodal_cubic_sextics() {
        let g = GradedIdeal::new(plane(&[NODAL]));
        let basis = g.singular_basis(6).unwrap();
        assert_eq!(basis.len(), 1);
        let f = &g.ideal().generators()[0];
        let f2 = f.multiply(f);
        // f^2 up to the scalar that makes the leading coefficient 1
        let lead = f2.coefficient(basis[0].leading_monomial().unwrap());
        assert_eq!(basis[0].scale(&lead), f2);
        assert_eq!(g.singular_slice(6).unwrap().codim(), 27);
    }

    #[test]
    fn char_divides_degree() {
        let f7 = PrimeField::new(7).unwrap();
        let i = Ideal::parse(f7, &["x", "y", "z"], &[NODAL]).unwrap();
        assert_eq!(
            singular_slice(&i, 7).unwrap_err(),
            Error::CharDividesDegree { p: 7, degree: 7 }
        );
        assert!(singular_slice(&i, 8).is_ok());
        assert_eq!(
            GradedIdeal::new(i).degree_row(14).unwrap().dim_singular,
            None
        );
    }

    #[test]
    fn omega_dims() {
        assert_eq!(omega_slice_dim(&plane(&[NODAL]), 8).unwrap(), 24);
        assert_eq!(omega_slice_dim(&plane(&["x*z - y^2"]), 5).unwrap(), 9);
        let twisted = Ideal::parse(
            PrimeField::default(),
            &["x0", "x1", "x2", "x3"],
            &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        )
        .unwrap();
        assert_eq!(omega_slice_dim(&twisted, 6).unwrap(), 17);
    }

    #[test]
    fn rational_backend_matches() {
        let q = Ideal::parse(Rationals, &["x", "y", "z"], &[NODAL]).unwrap();
        let gq = GradedIdeal::new(q);
        let gp = GradedIdeal::new(plane(&[NODAL]));
        for l in 1..7 {
            assert_eq!(gq.degree_row(l).unwrap(), gp.degree_row(l).unwrap());
        }
    }
}
