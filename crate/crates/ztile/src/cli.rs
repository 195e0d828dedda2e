//! Command-line definitions and dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::batch;
use crate::parse::{parse_family, parse_product, parse_set, parse_thetas, InputError};
use crate::report::{self, SpectrumMode};

/// Exit status when a command computed its answer.
pub const EXIT_OK: i32 = 0;
/// Exit status of `batch` when some instance violated a check.
pub const EXIT_VIOLATIONS: i32 = 1;
/// Exit status for malformed input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ztile",
    version,
    about = "Tilings of the integers: conditions, certificates, spectra"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Largest period bound L the tiling search will attempt; above it the answer is "undecided".
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub lcap: u64,
    /// Worker threads for batch runs (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Aligned key/value lines instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: cyclotomic divisors, T1, T2, tiling, spectrum, classification.
    Analyze {
        /// Comma-separated nonnegative integers, e.g. 0,1,8,9.
        set: String,
    },
    /// Decide tiling and print a certificate.
    Tile { set: String },
    /// Construct, search for, or verify a rational spectrum.
    Spectrum {
        #[arg(value_enum)]
        action: SpectrumAction,
        set: String,
        /// Comma-separated reduced fractions p/q in [0, 1), 0 excluded (it is implicit).
        #[arg(long)]
        theta: Option<String>,
    },
    /// Analyze a product of factors 1 + x^m + ... + x^{m(n-1)} given as m:n,...
    Product { spec: String },
    /// Newton power sums S_1, ..., S_J of the roots of the characteristic polynomial.
    Powersums {
        set: String,
        #[arg(long)]
        count: usize,
    },
    /// Recognize sets whose polynomial is a single prime-power cyclotomic.
    Classify { set: String },
    /// Run invariant checks over an exhaustive family.
    Batch {
        /// "subsets max_elem=E max_size=K", "two-factor m<=M n<=N" or "three-factor m<=M n in {2,3}".
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        /// A check name or "all".
        #[arg(long, default_value = "all")]
        check: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumAction {
    Construct,
    Search,
    Verify,
}

/// Rendered output and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

fn render<T: Serialize>(report: &T, human: bool) -> String {
    if human {
        report::render_human(report)
    } else {
        report::render_json(report)
    }
}

pub fn execute(cli: &Cli) -> Result<Output, InputError> {
    let GlobalOpts {
        lcap,
        workers,
        human,
    } = cli.global;
    let ok = |text: String| {
        Ok(Output {
            text,
            status: EXIT_OK,
        })
    };
    match &cli.command {
        Command::Analyze { set } => ok(render(&report::analyze(&parse_set(set)?, lcap), human)),
        Command::Tile { set } => ok(render(&report::tile(&parse_set(set)?, lcap), human)),
        Command::Spectrum { action, set, theta } => {
            let a = parse_set(set)?;
            let text = match (action, theta) {
                (SpectrumAction::Verify, Some(t)) => {
                    render(&report::verify(&a, parse_thetas(t)?)?, human)
                }
                (SpectrumAction::Verify, None) => {
                    return Err(InputError("spectrum verify needs --theta".into()))
                }
                (_, Some(_)) => {
                    return Err(InputError("--theta is only used by spectrum verify".into()))
                }
                (SpectrumAction::Construct, None) => {
                    render(&report::spectrum(&a, SpectrumMode::Construct), human)
                }
                (SpectrumAction::Search, None) => {
                    render(&report::spectrum(&a, SpectrumMode::Search), human)
                }
            };
            ok(text)
        }
        Command::Product { spec } => {
            ok(render(&report::product(&parse_product(spec)?, lcap), human))
        }
        Command::Powersums { set, count } => {
            ok(render(&report::powersums(&parse_set(set)?, *count)?, human))
        }
        Command::Classify { set } => ok(render(&report::classification(&parse_set(set)?), human)),
        Command::Batch { family, check } => {
            let family = parse_family(&family.join(" "))?;
            let checks = batch::select_checks(check, &family)?;
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(w) = workers {
                if w == 0 {
                    return Err(InputError("--workers must be at least 1".into()));
                }
                pool = pool.num_threads(w);
            }
            let pool = pool
                .build()
                .map_err(|e| InputError(format!("cannot start workers: {e}")))?;
            let report = pool.install(|| batch::run(&family, &checks, lcap));
            let status = if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_VIOLATIONS
            };
            Ok(Output {
                text: render(&report, human),
                status,
            })
        }
    }
}
