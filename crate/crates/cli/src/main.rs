//! `dquant`: batch verifications for the deformation-quantization workbench.
//!
//! Exit status is 0 when the computation finished and every requested check
//! held, 1 when a check failed or an obstruction was found, and 2 for input
//! errors.

mod report;
mod verbs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "dquant", version, about = "Exact deformation-quantization checks")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Truncation order in ℏ.
    #[arg(long, global = true, default_value_t = 2)]
    order: usize,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit the human-readable report (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Check `[γ,γ] = 0` for a bivector.
    Jacobi { input: PathBuf },
    /// Moyal product of a constant bivector.
    Moyal { input: PathBuf },
    /// Solve the associativity equations order by order.
    StarSolve {
        input: PathBuf,
        /// Maximum derivative order per slot.
        #[arg(long)]
        ansatz_deriv_bound: Option<usize>,
        /// Only homogeneous coefficient degrees.
        #[arg(long)]
        homogeneous_only: bool,
    },
    /// Check associativity of a star product.
    StarCheck {
        input: PathBuf,
        /// Also evaluate on this many random polynomial triples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Quadratic and cubic relations of a degree-preserving star product.
    QuadRelations { input: PathBuf },
    /// Deformed quadratic relations of a quadratic Poisson bivector.
    Quant { input: PathBuf },
    /// First-order bivector of deformed quadratic relations.
    Dequant { input: PathBuf },
    /// Homogenize a degree ≤ 2 bivector with one central variable.
    Homogenize { input: PathBuf },
    /// Rees presentation of a filtered presentation.
    Rees {
        input: PathBuf,
        /// Override the word-weight bound of the presentation.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Compatibility of a bracket with a weight filtration.
    FiltrationCheck {
        input: PathBuf,
        /// Comma-separated generator weights (default all 1).
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Filtration level bound.
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Tangency to the hyperplane at infinity of Pⁿ.
    TangencyPn { input: PathBuf },
    /// Tangency to the divisor `p = 0`.
    TangencyDivisor { input: PathBuf, divisor: PathBuf },
    /// Check the algebroid constraints.
    AlgebroidVerify { input: PathBuf },
    /// Gauge away face units order by order.
    AlgebroidGauge { input: PathBuf },
    /// Rank of simplicial cohomology.
    Cech {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Commutation relation of x and y for the bracket {x,y} = xy.
    ExploreXyGuess,
}

fn emit(report: &Report, common: &Common) -> std::io::Result<()> {
    let body = if common.json {
        report.render_json()
    } else {
        report.render_text()
    };
    match &common.output {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = verbs::run(&cli.verb, &cli.common);
    if report.status == Status::Error {
        if let Some(msg) = report.result.get("error").and_then(|v| v.as_str()) {
            eprintln!("dquant: {msg}");
        }
    }
    if let Err(e) = emit(&report, &cli.common) {
        eprintln!("dquant: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.exit_code())
}
