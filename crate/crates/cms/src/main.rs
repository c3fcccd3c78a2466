use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cms::commands::{
    cmd_eqclass, cmd_from_weight, cmd_spectral, cmd_to_weight, cmd_verify, limits_from_env,
    parse_rational,
};
use cms::{CliError, Options, Report, Suite, SweepParams};

#[derive(Parser)]
#[command(
    name = "cms",
    version,
    about = "Equivalence classes, bipartitions and spectra of the deformed CMS integrals"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Rational value of k for the sampled fast path, e.g. 3/7.
    #[arg(long, global = true)]
    k_sample: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Equivalence class of a dominant weight with its diagram.
    Eqclass {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        weight: String,
    },
    /// Bijection between bipartitions in the cross and dominant weights.
    Bipartition {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Generalised eigenspace, image algebra and eigenfunction of a regular weight.
    Spectral {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        weight: String,
    },
    /// Verification sweep over a bounded box.
    Verify {
        suite: SuiteArg,
        #[command(flatten)]
        dims: Dims,
        #[arg(long = "box", default_value_t = 1)]
        bound: i64,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
}

#[derive(Subcommand)]
enum Direction {
    ToWeight {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value = "")]
        mu: String,
    },
    FromWeight {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        weight: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Commute,
    Bernoulli,
    Bijection,
    Spectral,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Commute => Suite::Commute,
            SuiteArg::Bernoulli => Suite::Bernoulli,
            SuiteArg::Bijection => Suite::Bijection,
            SuiteArg::Spectral => Suite::Spectral,
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options {
        timing: cli.timing,
        k_sample: cli.k_sample.as_deref().map(parse_rational).transpose()?,
        limits: limits_from_env()?,
    };
    match &cli.command {
        Command::Eqclass { dims, weight } => cmd_eqclass(dims.n, dims.m, weight, &opts),
        Command::Bipartition {
            direction: Direction::ToWeight { dims, lambda, mu },
        } => cmd_to_weight(dims.n, dims.m, lambda, mu, &opts),
        Command::Bipartition {
            direction: Direction::FromWeight { dims, weight },
        } => cmd_from_weight(dims.n, dims.m, weight, &opts),
        Command::Spectral { dims, weight } => cmd_spectral(dims.n, dims.m, weight, &opts),
        Command::Verify {
            suite,
            dims,
            bound,
            rmax,
        } => cmd_verify(
            (*suite).into(),
            SweepParams {
                n: dims.n,
                m: dims.m,
                bound: *bound,
                rmax: *rmax,
            },
            &opts,
        ),
    }
}

fn emit(report: &Report, json: bool) {
    let text = if json {
        format!("{}\n", report.to_json())
    } else {
        report.to_string()
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(&report, cli.json);
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            if let CliError::Resource {
                partial: Some(report),
                ..
            } = &e
            {
                emit(report, cli.json);
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
