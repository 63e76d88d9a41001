//! Exact computation of the space of hypersurfaces singular along a reduced
//! projective subscheme, and of the Hilbert-polynomial invariants of curves
//! that govern its dimension.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: prime fields and the rationals.
//! * [`poly`]: sparse homogeneous polynomials, a text parser, ideals.
//! * [`linalg`]: dense RREF, kernels and canonical subspaces.
//! * [`slices`]: degree slices of `I`, `I^2`, the Euler kernel, the singular
//!   space `(W_C)_l` and the dimension of `Gamma(Omega_C(l))`.
//! * [`invariants`]: Hilbert polynomials, `d`, `p_a`, `g~ + mu`, and the
//!   verification drivers.
//! * [`cli`]: input documents, commands and reports for the `singspace` binary.

pub mod cli;
pub mod dynamic;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod slices;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use poly::{Ideal, Monomial, Polynomial};
pub use slices::GradedIdeal;
