//! The `singspace` command-line front end.
//!
//! Exit status: 0 success, 1 verification failure, 2 input error,
//! 3 precondition error (e.g. the characteristic divides the degree).

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::invariants::Window;

pub use commands::{cmd_beta, cmd_hilbert, cmd_verify, cmd_wspace, parse_beta_form, Overrides};
pub use input::{Backend, InputDocument, Options};
pub use report::{BetaArgs, BetaReport, CommandEcho, Report, WSpace};

#[derive(Debug, Parser)]
#[command(
    name = "singspace",
    version,
    about = "Hypersurfaces singular along a projective subscheme"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient field, `prime:P` or `rational`; overrides the document.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,

    /// Degree window `LO:HI`; overrides the document.
    #[arg(long, global = true)]
    pub window: Option<Window>,

    /// Genus of the normalization, used to split off mu.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gtilde: Option<i64>,

    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert data of S/I; degree and arithmetic genus for curves.
    Hilbert { input: PathBuf },
    /// Basis of the degree-L forms singular along V(I).
    Wspace { input: PathBuf, degree: u32 },
    /// Run the nesting, lci, codimension and plane-curve checks.
    Verify { input: PathBuf },
    /// Codimension of (f, x_{b+2}, .., x_n)^2 in degree L.
    Beta {
        n: u32,
        b: u32,
        d: u32,
        l: u32,
        /// Compare against elimination for this form f.
        #[arg(long)]
        brute: Option<String>,
    },
}

fn execute(cli: &Cli) -> Result<Report> {
    let ov = Overrides {
        field: cli.field,
        window: cli.window,
        g_tilde: cli.gtilde,
    };
    match &cli.command {
        Command::Hilbert { input } => cmd_hilbert(&InputDocument::load(input)?, &ov),
        Command::Wspace { input, degree } => cmd_wspace(&InputDocument::load(input)?, &ov, *degree),
        Command::Verify { input } => cmd_verify(&InputDocument::load(input)?, &ov),
        Command::Beta { n, b, d, l, brute } => cmd_beta(
            BetaArgs {
                n: *n,
                b: *b,
                d: *d,
                l: *l,
            },
            brute.as_deref(),
            cli.field.unwrap_or_default(),
        ),
    }
}

/// Runs a parsed command line, printing to stdout/stderr; returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    let report = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            let e = Error::Input(format!("{}: {e}", path.display()));
            eprintln!("error: {e}");
            return e.exit_code();
        }
    }
    let text = if cli.json {
        report.to_json()
    } else {
        report.summary()
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    report.status
}
