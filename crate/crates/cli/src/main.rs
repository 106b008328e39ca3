//! `nok`: Newton-Okounkov bodies, area measures and Blaschke sums from the command line.
//!
//! Exit status is 0 on success, 2 on domain errors (and on failed
//! verification cases), 1 on I/O, parse or usage errors. Every error prints
//! `{"error":code,"detail":...}` on stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nok_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "nok",
    version,
    about = "Newton-Okounkov bodies, area measures and Blaschke sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Off,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    /// Solver tolerance on relative facet-area residuals.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Arithmetic for class coordinates and input bodies.
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Body of a divisor class.
    BodyDiv {
        /// Bundle JSON: `{"hn":[{"rank","slope"}..], "divisor"?, "omega"?}`, or a bare HN list.
        #[arg(long)]
        hn: PathBuf,
        /// Divisor `x,y` standing for x·χ + y·f.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Flag permutation in one-line notation, e.g. `2,3,1`.
        #[arg(long)]
        omega: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Body of a movable curve class.
    BodyCurve {
        #[arg(long)]
        hn: PathBuf,
        /// Curve class `c1,c2`.
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Blaschke sum of two polytopes given as polytope JSON.
    Blaschke {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Closed-form Blaschke sum of the bodies of χ - t1·f and a(χ - t2·f).
    BlaschkeClosed {
        #[arg(long)]
        hn: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Polytope with a prescribed area measure.
    MinkowskiSolve {
        /// Measure JSON: `{"dim":n,"atoms":[{"dir":[..],"mass":..}]}`.
        #[arg(long)]
        measure: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Generators of the divisor and curve cones.
    Cones {
        #[arg(long)]
        hn: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Positivity labels of a divisor and/or a curve class.
    Classify {
        #[arg(long)]
        hn: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dual volume of a curve class and its minimising parameter.
    DualVolume {
        #[arg(long)]
        hn: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Polytope of a movable curve class on a complete toric variety.
    ToricBody {
        /// Toric JSON: `{"rays":[[..]..],"intersections":[..]}`.
        toric: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Blaschke sum of two toric curve polytopes against the polytope of the summed class.
    ToricBlaschke {
        left: PathBuf,
        /// Same rays as `left`; only its intersections are used.
        right: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Runs a verification suite, or `all` of them.
    Verify {
        suite: String,
        /// Restricts bundle suites to one HN datum.
        #[arg(long)]
        hn: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overrides the suite's pass threshold.
        #[arg(long)]
        tol: Option<f64>,
        /// Run cases on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(serde::Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    detail: &'a str,
}

fn report(error: &str, detail: &str) {
    let body = serde_json::to_string(&ErrorJson { error, detail }).expect("plain strings serialise");
    eprintln!("{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("UsageError", e.to_string().trim());
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(commands::Outcome::Done) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Failed(detail)) => {
            report("VerificationFailed", &detail);
            ExitCode::from(2)
        }
        Err(e) => {
            report(e.code(), &e.to_string());
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_domain() {
        2
    } else {
        1
    }
}
