use std::fmt::Write as _;

use serde::Serialize;

use crate::field::FieldSpec;
use crate::invariants::{CheckReport, CurveInvariants, HilbertRecord, Verdict, Window};
use crate::slices::DegreeRow;

/// What was asked for, normalized so that the report depends on the input
/// document alone.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CommandEcho {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_tilde: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_args: Option<BetaArgs>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BetaArgs {
    pub n: u32,
    pub b: u32,
    pub d: u32,
    pub l: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WSpace {
    pub l: u32,
    pub dim_forms: usize,
    pub dim: usize,
    pub codim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub closed_form: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    pub status: i32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<HilbertRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<CurveInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wspace: Option<WSpace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_degrees: Vec<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

fn tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Skip => "SKIP",
        Verdict::Error => "ERROR",
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let c = &self.command;
        let _ = write!(out, "singspace {}", c.name);
        if let Some(f) = c.field {
            let _ = write!(out, "  field {f}");
        }
        if let Some(w) = c.window {
            let _ = write!(out, "  window {w}");
        }
        out.push('\n');
        if !c.generators.is_empty() {
            let _ = writeln!(
                out,
                "ideal ({}) in P^{}",
                c.generators.join(", "),
                c.variables.len().saturating_sub(1)
            );
        }
        if !self.table.is_empty() {
            let _ = writeln!(
                out,
                "{:>4} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}",
                "l", "dim S", "dim I", "dim I^2", "dim W", "dim K", "omega"
            );
            for r in &self.table {
                let _ = writeln!(
                    out,
                    "{:>4} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}",
                    r.l,
                    r.dim_s,
                    r.dim_ideal,
                    r.dim_square,
                    opt(r.dim_singular),
                    r.dim_euler_kernel,
                    opt(r.omega)
                );
            }
        }
        if let Some(h) = &self.hilbert {
            let _ = writeln!(
                out,
                "Hilbert polynomial of S/I: {}  (stable from l = {})",
                h.polynomial, h.stable_from
            );
        }
        if let Some(h) = &self.omega {
            let _ = writeln!(
                out,
                "Hilbert polynomial of Omega_C: {}  (stable from l = {})",
                h.polynomial, h.stable_from
            );
        }
        if let Some(inv) = &self.invariants {
            let _ = write!(out, "d = {}, p_a = {}", inv.d, inv.p_a);
            if let Some(s) = inv.g_plus_mu {
                let _ = write!(out, ", g~ + mu = {s}");
            }
            if let Some(mu) = inv.mu {
                let _ = write!(out, ", mu = {mu}");
            }
            out.push('\n');
        }
        if let Some(w) = &self.wspace {
            let _ = writeln!(
                out,
                "(W_C)_{}: dim {}, codim {} in S_{} (dim {})",
                w.l, w.dim, w.codim, w.l, w.dim_forms
            );
            for b in &w.basis {
                let _ = writeln!(out, "  {b}");
            }
        }
        if let (Some(b), Some(args)) = (&self.beta, c.beta_args) {
            let _ = writeln!(
                out,
                "beta(n={}, b={}, d={}, l={}) = {}",
                args.n, args.b, args.d, args.l, b.closed_form
            );
            if let (Some(bf), Some(v), Some(f)) = (b.brute_force, b.verdict, &b.f) {
                let _ = writeln!(
                    out,
                    "[{}] brute force with f = {f}: {bf}, closed form {}",
                    tag(v),
                    b.closed_form
                );
            }
        }
        for check in &self.checks {
            let _ = write!(out, "[{}] {}", tag(check.verdict), check.name);
            if let (Some(a), Some(b)) = (check.degrees.first(), check.degrees.last()) {
                let _ = write!(out, "  (l = {a}..{b})");
            }
            if let Some(f) = &check.first_failure {
                let _ = write!(
                    out,
                    "  first failure at l = {}: expected {}, computed {}",
                    f.l, f.expected, f.computed
                );
            }
            if let Some(d) = &check.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
        }
        if !self.skipped_degrees.is_empty() {
            let _ = writeln!(
                out,
                "skipped degrees (characteristic divides l): {:?}",
                self.skipped_degrees
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}
