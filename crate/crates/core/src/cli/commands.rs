use super::input::{Backend, InputDocument};
use super::report::{BetaArgs, BetaReport, CommandEcho, Report, WSpace};
use crate::dynamic::AnyIdeal;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::invariants::{self, CheckReport, Verdict, Window};
use crate::poly::{default_names, parse_polynomial, Polynomial};

/// Command-line values that take precedence over the document.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub window: Option<Window>,
    pub g_tilde: Option<i64>,
}

struct Prepared {
    doc: InputDocument,
    ideal: AnyIdeal,
    window: Window,
    g_tilde: Option<i64>,
}

fn prepare(doc: &InputDocument, ov: &Overrides) -> Result<Prepared> {
    let mut doc = doc.clone();
    if let Some(f) = ov.field {
        doc.field = f;
    }
    let ideal = doc.ideal()?;
    let window = match ov.window {
        Some(w) => w,
        None => doc.window(&ideal)?,
    };
    let g_tilde = ov.g_tilde.or(doc.options.g_tilde);
    Ok(Prepared {
        doc,
        ideal,
        window,
        g_tilde,
    })
}

fn echo(name: &str, p: &Prepared) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        field: Some(p.ideal.field_spec()),
        variables: p.ideal.names().to_vec(),
        generators: p.ideal.render_generators(),
        window: Some(p.window),
        g_tilde: p.g_tilde,
        ..CommandEcho::default()
    }
}

fn skipped(table: &[crate::slices::DegreeRow]) -> Vec<u32> {
    table
        .iter()
        .filter(|r| r.dim_singular.is_none())
        .map(|r| r.l)
        .collect()
}

/// Per-degree dimension comparison against the other backend.
fn cross_check(p: &Prepared, table: &[crate::slices::DegreeRow]) -> Result<Vec<String>> {
    if p.doc.options.backend != Backend::Both {
        return Ok(Vec::new());
    }
    let other = match p.ideal.field_spec() {
        FieldSpec::Prime { .. } => FieldSpec::Rational,
        FieldSpec::Rational => FieldSpec::default(),
    };
    let other_ideal = p.doc.ideal_over(other)?;
    let other_table = other_ideal.table(p.window)?;
    let mut warnings = Vec::new();
    for (a, b) in table.iter().zip(&other_table) {
        // the rational run has no skipped degrees; compare what both computed
        let mut b = b.clone();
        if a.dim_singular.is_none() {
            b.dim_singular = None;
            b.omega = None;
        }
        if *a != b {
            warnings.push(format!(
                "backend disagreement at l = {} ({} vs {}): {:?} vs {:?}; possibly a bad prime",
                a.l,
                p.ideal.field_spec(),
                other,
                a,
                b
            ));
        }
    }
    Ok(warnings)
}

/// Hilbert data of `S/I`, and `d`, `p_a` when `V(I)` is a curve.
pub fn cmd_hilbert(doc: &InputDocument, ov: &Overrides) -> Result<Report> {
    let p = prepare(doc, ov)?;
    let table = p.ideal.table(p.window)?;
    let mut report = Report {
        command: echo("hilbert", &p),
        skipped_degrees: skipped(&table),
        warnings: cross_check(&p, &table)?,
        table,
        ..Report::default()
    };
    let rec = p.ideal.quotient_record(p.window)?;
    match invariants::curve_from_record(&rec) {
        Ok(inv) => report.invariants = Some(inv),
        Err(e) => {
            report.status = e.exit_code();
            report.errors.push(e.to_string());
        }
    }
    report.hilbert = Some(rec);
    Ok(report)
}

/// Basis and dimension of `(W_C)_l`.
pub fn cmd_wspace(doc: &InputDocument, ov: &Overrides, l: u32) -> Result<Report> {
    let p = prepare(doc, ov)?;
    let basis = p.ideal.singular_basis(l)?;
    let dim_forms = p.ideal.dim_forms(l);
    let mut command = echo("wspace", &p);
    command.window = None;
    command.degree = Some(l);
    Ok(Report {
        command,
        wspace: Some(WSpace {
            l,
            dim_forms,
            dim: basis.len(),
            codim: dim_forms - basis.len(),
            basis,
        }),
        ..Report::default()
    })
}

/// Nesting, lci comparison, the codimension formula, and for plane curves the
/// differentials identity. A failing check does not stop the others.
pub fn cmd_verify(doc: &InputDocument, ov: &Overrides) -> Result<Report> {
    let p = prepare(doc, ov)?;
    let table = p.ideal.table(p.window)?;
    let mut report = Report {
        command: echo("verify", &p),
        skipped_degrees: skipped(&table),
        warnings: cross_check(&p, &table)?,
        table,
        ..Report::default()
    };
    let window = p.window;

    report.checks.push(
        p.ideal
            .nesting_check(window)
            .unwrap_or_else(|e| CheckReport::errored("nesting", &e)),
    );

    let quotient = p.ideal.quotient_record(window);
    let stable = quotient.as_ref().map_or(window.lo, |r| r.stable_from);
    report.checks.push(
        p.ideal
            .lci_check(window, stable)
            .unwrap_or_else(|e| CheckReport::errored("lci", &e)),
    );

    let curve = quotient.and_then(|rec| {
        let inv = invariants::curve_from_record(&rec);
        report.hilbert = Some(rec);
        inv
    });
    let omega = p.ideal.omega_record(window);
    match (curve, omega) {
        (Ok(mut inv), Ok(omega)) => {
            match invariants::g_plus_mu_from_record(&inv, &omega) {
                Ok(s) => {
                    inv.g_plus_mu = Some(s);
                    inv.mu = p.g_tilde.map(|g| s - g);
                    let from = stable.max(omega.stable_from);
                    report.checks.push(
                        p.ideal
                            .verify_codim_formula(&inv, s, window, from)
                            .unwrap_or_else(|e| CheckReport::errored("codim_formula", &e)),
                    );
                }
                Err(e) => report
                    .checks
                    .push(CheckReport::errored("codim_formula", &e)),
            }
            report.invariants = Some(inv);
            report.omega = Some(omega);
        }
        (Err(e), _) | (_, Err(e)) => {
            report
                .checks
                .push(CheckReport::errored("codim_formula", &e));
        }
    }

    let plane = if p.ideal.n() != 2 || p.ideal.num_generators() != 1 {
        CheckReport::skipped("plane_theorem", "needs a single generator in P^2")
    } else {
        match p.ideal.verify_plane_theorem(window) {
            Ok(r) => CheckReport {
                name: "plane_theorem".into(),
                verdict: Verdict::Pass,
                degrees: r.omega.stable_samples().map(|s| s.0).collect(),
                first_failure: None,
                detail: Some(format!("Omega_C polynomial {} = d*l + p_a - 1", r.computed)),
            },
            Err(e @ Error::TheoremViolation { .. }) => CheckReport {
                name: "plane_theorem".into(),
                verdict: Verdict::Fail,
                degrees: Vec::new(),
                first_failure: None,
                detail: Some(e.to_string()),
            },
            Err(e) => CheckReport::errored("plane_theorem", &e),
        }
    };
    report.checks.push(plane);

    let failed = report
        .checks
        .iter()
        .any(|c| matches!(c.verdict, Verdict::Fail | Verdict::Error));
    report.status = i32::from(failed);
    Ok(report)
}

const LETTERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

/// Parses `text` in `x0..xn`, falling back to `x, y, z, w, u, v`.
pub fn parse_beta_form<F: Field>(text: &str, nvars: usize, field: &F) -> Result<Polynomial<F>> {
    match parse_polynomial(text, &default_names(nvars), field) {
        Err(Error::UnknownVariable { .. }) if nvars <= LETTERS.len() => {
            parse_polynomial(text, &LETTERS[..nvars], field)
        }
        r => r,
    }
}

fn brute<F: Field>(field: F, args: BetaArgs, text: &str) -> Result<(String, u128)> {
    let f = parse_beta_form(text, args.n as usize + 1, &field)?;
    if f.degree() != Some(args.d) {
        return Err(Error::Domain(format!(
            "f = {text} does not have degree d = {}",
            args.d
        )));
    }
    let codim = invariants::beta_bruteforce(args.n, args.b, &f, args.l)?;
    Ok((f.render(&default_names(args.n as usize + 1)), codim as u128))
}

/// Closed-form codimension of `(f, x_{b+2}, .., x_n)^2`, optionally compared
/// with elimination for a concrete `f`.
pub fn cmd_beta(args: BetaArgs, brute_expr: Option<&str>, field: FieldSpec) -> Result<Report> {
    let closed = invariants::beta_closed_form(args.n, args.b, args.d, args.l)?;
    let mut beta = BetaReport {
        closed_form: closed,
        f: None,
        brute_force: None,
        verdict: None,
    };
    let mut status = 0;
    if let Some(text) = brute_expr {
        let (f, value) = match field {
            FieldSpec::Prime { p } => brute(PrimeField::new(p)?, args, text)?,
            FieldSpec::Rational => brute(Rationals, args, text)?,
        };
        let verdict = if value == closed {
            Verdict::Pass
        } else {
            status = 1;
            Verdict::Fail
        };
        beta.f = Some(f);
        beta.brute_force = Some(value);
        beta.verdict = Some(verdict);
    }
    Ok(Report {
        command: CommandEcho {
            name: "beta".into(),
            field: brute_expr.map(|_| field),
            beta_args: Some(args),
            ..CommandEcho::default()
        },
        status,
        beta: Some(beta),
        ..Report::default()
    })
}
