//! Field choice at runtime.
//!
//! [`AnyIdeal`] pairs a [`GradedIdeal`] with whichever backend a
//! [`FieldSpec`] names, and forwards the common queries. Front ends that only
//! learn the field from user input (the CLI, the Python bindings) go through
//! this type; library users who know the field statically can use
//! [`GradedIdeal`] directly.

use crate::error::Result;
use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::invariants::{self, CheckReport, CurveInvariants, HilbertRecord, Window};
use crate::poly::Ideal;
use crate::slices::{DegreeRow, GradedIdeal};

#[derive(Debug)]
pub enum AnyIdeal {
    Prime(GradedIdeal<PrimeField>),
    Rational(GradedIdeal<Rationals>),
}

/// Runs `$body` with `$g` bound to the inner `GradedIdeal`, whatever its field.
#[macro_export]
macro_rules! with_graded {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::dynamic::AnyIdeal::Prime($g) => $body,
            $crate::dynamic::AnyIdeal::Rational($g) => $body,
        }
    };
}

impl AnyIdeal {
    pub fn parse(
        spec: FieldSpec,
        names: &[impl AsRef<str>],
        generators: &[impl AsRef<str>],
    ) -> Result<Self> {
        Ok(match spec {
            FieldSpec::Prime { p } => AnyIdeal::Prime(GradedIdeal::new(Ideal::parse(
                PrimeField::new(p)?,
                names,
                generators,
            )?)),
            FieldSpec::Rational => AnyIdeal::Rational(GradedIdeal::new(Ideal::parse(
                Rationals, names, generators,
            )?)),
        })
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyIdeal::Prime(g) => FieldSpec::Prime {
                p: g.field().modulus(),
            },
            AnyIdeal::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn n(&self) -> usize {
        with_graded!(self, g => g.n())
    }

    pub fn names(&self) -> &[String] {
        with_graded!(self, g => g.ideal().names())
    }

    pub fn num_generators(&self) -> usize {
        with_graded!(self, g => g.ideal().generators().len())
    }

    pub fn render_generators(&self) -> Vec<String> {
        with_graded!(self, g => g.ideal().render_generators())
    }

    pub fn default_window(&self) -> Window {
        with_graded!(self, g => Window::default_for(g.ideal()))
    }

    pub fn degree_valid(&self, l: u32) -> bool {
        with_graded!(self, g => g.degree_valid(l))
    }

    pub fn dim_forms(&self, l: u32) -> usize {
        with_graded!(self, g => g.dim_forms(l))
    }

    pub fn ideal_dim(&self, l: u32) -> usize {
        with_graded!(self, g => g.ideal_slice(l).dim())
    }

    pub fn square_dim(&self, l: u32) -> usize {
        with_graded!(self, g => g.ideal_square_slice(l).dim())
    }

    pub fn euler_kernel_dim(&self, l: u32) -> Result<usize> {
        with_graded!(self, g => g.euler_kernel(l).map(|k| k.dim()))
    }

    pub fn singular_dim(&self, l: u32) -> Result<usize> {
        with_graded!(self, g => g.singular_slice(l).map(|w| w.dim()))
    }

    /// Canonically rendered RREF basis of `(W_C)_l`.
    pub fn singular_basis(&self, l: u32) -> Result<Vec<String>> {
        with_graded!(self, g => Ok(g
            .singular_basis(l)?
            .iter()
            .map(|p| p.render(g.ideal().names()))
            .collect()))
    }

    pub fn omega_dim(&self, l: u32) -> Result<usize> {
        with_graded!(self, g => g.omega_slice_dim(l))
    }

    pub fn degree_row(&self, l: u32) -> Result<DegreeRow> {
        with_graded!(self, g => g.degree_row(l))
    }

    /// Rows for every degree of the window, `l = 0` excluded.
    pub fn table(&self, window: Window) -> Result<Vec<DegreeRow>> {
        use rayon::prelude::*;
        let degrees: Vec<u32> = window.degrees().filter(|&l| l >= 1).collect();
        degrees.par_iter().map(|&l| self.degree_row(l)).collect()
    }

    pub fn quotient_record(&self, window: Window) -> Result<HilbertRecord> {
        with_graded!(self, g => invariants::quotient_record(g, window))
    }

    pub fn omega_record(&self, window: Window) -> Result<HilbertRecord> {
        with_graded!(self, g => invariants::omega_record(g, window))
    }

    pub fn curve_invariants(&self, window: Window) -> Result<CurveInvariants> {
        with_graded!(self, g => invariants::curve_invariants(g, window))
    }

    pub fn mu_plus_gtilde(&self, window: Window) -> Result<i64> {
        with_graded!(self, g => invariants::mu_plus_gtilde(g, window))
    }

    pub fn nesting_check(&self, window: Window) -> Result<CheckReport> {
        with_graded!(self, g => invariants::nesting_check(g, window))
    }

    pub fn lci_check(&self, window: Window, from: u32) -> Result<CheckReport> {
        with_graded!(self, g => invariants::lci_check(g, window, from))
    }

    pub fn verify_codim_formula(
        &self,
        inv: &CurveInvariants,
        g_plus_mu: i64,
        window: Window,
        from: u32,
    ) -> Result<CheckReport> {
        with_graded!(self, g => invariants::verify_codim_formula(g, inv, g_plus_mu, window, from))
    }

    pub fn verify_plane_theorem(&self, window: Window) -> Result<invariants::PlaneTheoremReport> {
        with_graded!(self, g => invariants::verify_plane_theorem(g, window))
    }
}
