//! Python bindings: an `Ideal` class over a prime field or the rationals,
//! plus the beta codimension helpers.
//!
//! Structured results (tables, Hilbert records, verification reports) are
//! returned as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use singspace::cli::{cmd_verify, InputDocument, Options, Overrides};
use singspace::dynamic::AnyIdeal;
use singspace::field::{FieldSpec, PrimeField, Rationals};
use singspace::invariants::{self, Window};
use singspace::poly::{monomials_of_degree, parse_polynomial};
use singspace::Error;

create_exception!(
    singspace,
    PreconditionError,
    PyValueError,
    "A computation's precondition does not hold."
);

fn to_py(e: Error) -> PyErr {
    if e.exit_code() == 3 {
        PreconditionError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_field(field: &str) -> PyResult<FieldSpec> {
    let spec: FieldSpec = field.parse().map_err(to_py)?;
    spec.validate().map_err(to_py)?;
    Ok(spec)
}

/// A homogeneous ideal together with its cached graded pieces.
#[pyclass(frozen, module = "singspace")]
struct Ideal {
    doc: InputDocument,
    inner: AnyIdeal,
}

impl Ideal {
    fn window(&self, window: Option<(u32, u32)>) -> PyResult<Window> {
        match window {
            Some((lo, hi)) => Window::new(lo, hi).map_err(to_py),
            None => Ok(self.inner.default_window()),
        }
    }
}

#[pymethods]
impl Ideal {
    #[new]
    #[pyo3(signature = (variables, generators, field = "prime:10007"))]
    fn new(variables: Vec<String>, generators: Vec<String>, field: &str) -> PyResult<Self> {
        let doc = InputDocument {
            field: parse_field(field)?,
            variables,
            generators,
            options: Options::default(),
            comment: None,
        };
        let inner = doc.ideal().map_err(to_py)?;
        Ok(Self { doc, inner })
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field_spec().to_string()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// Generators in normalized form.
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.render_generators()
    }

    /// Dimension of the ambient projective space.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn default_window(&self) -> (u32, u32) {
        let w = self.inner.default_window();
        (w.lo, w.hi)
    }

    fn dim_forms(&self, l: u32) -> usize {
        self.inner.dim_forms(l)
    }

    fn ideal_dim(&self, py: Python<'_>, l: u32) -> usize {
        py.detach(|| self.inner.ideal_dim(l))
    }

    fn square_dim(&self, py: Python<'_>, l: u32) -> usize {
        py.detach(|| self.inner.square_dim(l))
    }

    fn euler_kernel_dim(&self, py: Python<'_>, l: u32) -> PyResult<usize> {
        py.detach(|| self.inner.euler_kernel_dim(l)).map_err(to_py)
    }

    fn singular_dim(&self, py: Python<'_>, l: u32) -> PyResult<usize> {
        py.detach(|| self.inner.singular_dim(l)).map_err(to_py)
    }

    /// Reduced echelon basis of the degree-`l` forms singular along the zero set.
    fn singular_basis(&self, py: Python<'_>, l: u32) -> PyResult<Vec<String>> {
        py.detach(|| self.inner.singular_basis(l)).map_err(to_py)
    }

    fn omega_dim(&self, py: Python<'_>, l: u32) -> PyResult<usize> {
        py.detach(|| self.inner.omega_dim(l)).map_err(to_py)
    }

    fn degree_row<'py>(&self, py: Python<'py>, l: u32) -> PyResult<Bound<'py, PyAny>> {
        let row = py.detach(|| self.inner.degree_row(l)).map_err(to_py)?;
        to_dict(py, &row)
    }

    #[pyo3(signature = (window = None))]
    fn table<'py>(
        &self,
        py: Python<'py>,
        window: Option<(u32, u32)>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let window = self.window(window)?;
        let rows = py.detach(|| self.inner.table(window)).map_err(to_py)?;
        to_dict(py, &rows)
    }

    /// Hilbert data of the quotient ring.
    #[pyo3(signature = (window = None))]
    fn hilbert<'py>(
        &self,
        py: Python<'py>,
        window: Option<(u32, u32)>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let window = self.window(window)?;
        let rec = py
            .detach(|| self.inner.quotient_record(window))
            .map_err(to_py)?;
        to_dict(py, &rec)
    }

    /// Hilbert data of the twisted differentials.
    #[pyo3(signature = (window = None))]
    fn omega_hilbert<'py>(
        &self,
        py: Python<'py>,
        window: Option<(u32, u32)>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let window = self.window(window)?;
        let rec = py
            .detach(|| self.inner.omega_record(window))
            .map_err(to_py)?;
        to_dict(py, &rec)
    }

    /// `d`, `p_a` and `g~ + mu`; raises `PreconditionError` unless the zero
    /// set is a curve.
    #[pyo3(signature = (window = None))]
    fn curve_invariants<'py>(
        &self,
        py: Python<'py>,
        window: Option<(u32, u32)>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let window = self.window(window)?;
        let inv = py
            .detach(|| -> singspace::Result<_> {
                let mut inv = self.inner.curve_invariants(window)?;
                inv.g_plus_mu = Some(self.inner.mu_plus_gtilde(window)?);
                Ok(inv)
            })
            .map_err(to_py)?;
        to_dict(py, &inv)
    }

    /// The full verification report, as the `verify` command prints it.
    #[pyo3(signature = (window = None, g_tilde = None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        window: Option<(u32, u32)>,
        g_tilde: Option<i64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let ov = Overrides {
            field: None,
            window: Some(self.window(window)?),
            g_tilde,
        };
        let report = py.detach(|| cmd_verify(&self.doc, &ov)).map_err(to_py)?;
        to_dict(py, &report)
    }

    fn __repr__(&self) -> String {
        format!(
            "Ideal([{}], field='{}')",
            self.inner.render_generators().join(", "),
            self.field()
        )
    }
}

/// Closed-form codimension of `((f, x_{b+2}, .., x_n)^2)_l` for `deg f = d`.
#[pyfunction]
fn beta_closed_form(n: u32, b: u32, d: u32, l: u32) -> PyResult<u128> {
    invariants::beta_closed_form(n, b, d, l).map_err(to_py)
}

/// The same codimension by elimination, for a form `f` in `x0..x_{b+1}`.
#[pyfunction]
#[pyo3(signature = (n, b, f, l, field = "prime:10007"))]
fn beta_bruteforce(
    py: Python<'_>,
    n: u32,
    b: u32,
    f: &str,
    l: u32,
    field: &str,
) -> PyResult<usize> {
    let spec = parse_field(field)?;
    py.detach(|| -> singspace::Result<usize> {
        match spec {
            FieldSpec::Prime { p } => {
                let field = PrimeField::new(p)?;
                let f = singspace::cli::parse_beta_form(f, n as usize + 1, &field)?;
                invariants::beta_bruteforce(n, b, &f, l)
            }
            FieldSpec::Rational => {
                let f = singspace::cli::parse_beta_form(f, n as usize + 1, &Rationals)?;
                invariants::beta_bruteforce(n, b, &f, l)
            }
        }
    })
    .map_err(to_py)
}

/// Parses and re-renders a polynomial in normal form.
#[pyfunction(name = "parse_polynomial")]
#[pyo3(signature = (text, variables, field = "prime:10007"))]
fn parse_polynomial_py(text: &str, variables: Vec<String>, field: &str) -> PyResult<String> {
    match parse_field(field)? {
        FieldSpec::Prime { p } => {
            let field = PrimeField::new(p).map_err(to_py)?;
            Ok(parse_polynomial(text, &variables, &field)
                .map_err(to_py)?
                .render(&variables))
        }
        FieldSpec::Rational => Ok(parse_polynomial(text, &variables, &Rationals)
            .map_err(to_py)?
            .render(&variables)),
    }
}

/// Exponent vectors of the degree-`m` monomials, largest first in grevlex.
#[pyfunction(name = "monomials_of_degree")]
fn monomials_of_degree_py(nvars: usize, m: u32) -> Vec<Vec<u32>> {
    monomials_of_degree(nvars, m)
        .into_iter()
        .map(|mono| mono.exponents().to_vec())
        .collect()
}

#[pymodule]
#[pyo3(name = "singspace")]
fn singspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ideal>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add_function(wrap_pyfunction!(beta_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(beta_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(parse_polynomial_py, m)?)?;
    m.add_function(wrap_pyfunction!(monomials_of_degree_py, m)?)?;
    Ok(())
}
