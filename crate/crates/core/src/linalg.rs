//! Dense exact linear algebra: reduced row-echelon form, kernels, subspaces.

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` fixes the width when
    /// there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[E]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = field.mul(a, &other[(k, j)]);
                    let s = field.add(&out[(i, j)], &t);
                    out[(i, j)] = s;
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        self.iter_rows()
            .map(|r| {
                r.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                    let t = field.mul(a, b);
                    field.add(&acc, &t)
                })
            })
            .collect()
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

/// Output of [`rref`]: the nonzero rows of the reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

struct EchelonRow<E> {
    entries: Vec<E>,
    support: Vec<usize>,
}

/// Incremental row echelon form, one pivot row per pivot column.
///
/// Rows are kept in echelon (not reduced) form while inserting; [`finish`]
/// back-substitutes.
///
/// [`finish`]: Echelon::finish
struct Echelon<'a, F: Field> {
    field: &'a F,
    cols: usize,
    by_pivot: Vec<Option<EchelonRow<F::Elem>>>,
    rank: usize,
}

impl<'a, F: Field> Echelon<'a, F> {
    fn new(field: &'a F, cols: usize) -> Self {
        Self {
            field,
            cols,
            by_pivot: (0..cols).map(|_| None).collect(),
            rank: 0,
        }
    }

    fn insert(&mut self, mut row: Vec<F::Elem>) {
        let f = self.field;
        let mut c = 0;
        while c < self.cols {
            if f.is_zero(&row[c]) {
                c += 1;
                continue;
            }
            match &self.by_pivot[c] {
                Some(p) => {
                    let factor = row[c].clone();
                    for &j in &p.support {
                        f.sub_mul_assign(&mut row[j], &factor, &p.entries[j]);
                    }
                    c += 1;
                }
                None => {
                    let inv = f.inv(&row[c]).expect("nonzero pivot");
                    let mut support = Vec::new();
                    for (j, v) in row.iter_mut().enumerate().skip(c) {
                        if !f.is_zero(v) {
                            *v = f.mul(v, &inv);
                            support.push(j);
                        }
                    }
                    self.by_pivot[c] = Some(EchelonRow {
                        entries: row,
                        support,
                    });
                    self.rank += 1;
                    return;
                }
            }
        }
    }

    fn finish(mut self) -> Rref<F::Elem> {
        let f = self.field;
        let pivots: Vec<usize> = (0..self.cols)
            .filter(|&c| self.by_pivot[c].is_some())
            .collect();
        // back-substitute from the last pivot upwards; rows below are
        // already fully reduced when a row is processed
        for &c in pivots.iter().rev() {
            let mut row = self.by_pivot[c].take().expect("pivot row");
            let mut touched = false;
            for &pc in pivots.iter().filter(|&&pc| pc > c) {
                if f.is_zero(&row.entries[pc]) {
                    continue;
                }
                let factor = row.entries[pc].clone();
                let lower = self.by_pivot[pc].as_ref().expect("reduced row");
                for &j in &lower.support {
                    f.sub_mul_assign(&mut row.entries[j], &factor, &lower.entries[j]);
                }
                touched = true;
            }
            if touched {
                row.support = (c..self.cols)
                    .filter(|&j| !f.is_zero(&row.entries[j]))
                    .collect();
            }
            self.by_pivot[c] = Some(row);
        }
        let rows: Vec<Vec<F::Elem>> = pivots
            .iter()
            .map(|&c| self.by_pivot[c].take().expect("pivot row").entries)
            .collect();
        Rref {
            matrix: Matrix::from_rows(self.cols, rows),
            rank: pivots.len(),
            pivots,
        }
    }
}

/// Canonical reduced row-echelon form of the row space of `rows`.
///
/// Rows are inserted sparsest (then lightest) first; the result does not
/// depend on the insertion order.
pub fn rref_rows<F: Field>(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Rref<F::Elem> {
    let mut keyed: Vec<(usize, u64, Vec<F::Elem>)> = rows
        .into_iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged rows");
            let nz = r.iter().filter(|v| !field.is_zero(v)).count();
            let w = r.iter().map(|v| field.weight(v)).sum();
            (nz, w, r)
        })
        .filter(|(nz, _, _)| *nz > 0)
        .collect();
    keyed.sort_by_key(|(nz, w, _)| (*nz, *w));
    let mut ech = Echelon::new(field, cols);
    for (_, _, r) in keyed {
        ech.insert(r);
        if ech.rank == cols {
            break;
        }
    }
    ech.finish()
}

pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    rref_rows(field, m.cols(), m.clone().into_rows())
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Basis of `{ v : M v = 0 }`, as a canonical [`Subspace`].
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let r = rref(field, m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<F::Elem>> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = field.neg(&r.matrix[(i, free)]);
            }
            v
        })
        .collect();
    Subspace::span(field, cols, vectors)
}

/// A subspace of `k^ambient_dim`, stored as its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix {
                rows: 0,
                cols: ambient_dim,
                data: Vec::new(),
            },
            pivots: Vec::new(),
        }
    }

    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: Vec<Vec<E>>) -> Self {
        Self::from_rref(rref_rows(field, ambient_dim, vectors))
    }

    pub fn from_rref(r: Rref<E>) -> Self {
        Self {
            ambient_dim: r.matrix.cols(),
            basis: r.matrix,
            pivots: r.pivots,
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts basis rows so that every pivot coordinate of `v` becomes zero.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &mut [E]) {
        assert_eq!(v.len(), self.ambient_dim);
        for (i, &p) in self.pivots.iter().enumerate() {
            if field.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (x, b) in v[p..].iter_mut().zip(&self.basis.row(i)[p..]) {
                if !field.is_zero(b) {
                    field.sub_mul_assign(x, &factor, b);
                }
            }
        }
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: v.len(),
            });
        }
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        Ok(w.iter().all(|x| field.is_zero(x)))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<bool> {
        for row in self.basis.iter_rows() {
            if !other.contains(field, row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `subspace_contains(U, v)`.
pub fn subspace_contains<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &[F::Elem],
) -> Result<bool> {
    u.contains(field, v)
}
