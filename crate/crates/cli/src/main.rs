//! `thresholds`: command-line front end for `thresholds-core`.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thresholds_core::Error;

use config::{Config, Format};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "thresholds", version, about = "Exact singularity thresholds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Exit with status 3 when a result is not certified.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

/// A polynomial or a list of generators.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct IdealArgs {
    /// A single polynomial, e.g. "x^2+y^3".
    #[arg(long)]
    pub poly: Option<String>,
    /// Comma-separated generators, e.g. "x^2,x*y+y^3".
    #[arg(long)]
    pub ideal: Option<String>,
    /// Comma-separated monomials, e.g. "x^2,y^3".
    #[arg(long)]
    pub monomial: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Log canonical threshold at the origin (closed forms, monomial LP).
    Lct {
        #[command(flatten)]
        input: IdealArgs,
    },
    /// F-pure threshold enclosure from the ν sequence.
    Fpt {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long)]
        p: u64,
        /// Largest Frobenius exponent (default 3).
        #[arg(long)]
        e: Option<u32>,
    },
    /// ν(e): the largest i with a^i not inside m^[p^e].
    Nu {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Test ideal τ(a^λ).
    Tau {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: String,
        /// Iteration horizon (default 5).
        #[arg(long)]
        e: Option<u32>,
    },
    /// F-jumping numbers up to λ on a grid.
    Fjump {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long)]
        p: u64,
        /// Upper end of the scan (default 1).
        #[arg(long)]
        lambda: Option<String>,
        /// Grid denominator (default lcm(6, p^2), at most 10000).
        #[arg(long)]
        grid: Option<u64>,
        /// Iteration horizon (default 5).
        #[arg(long)]
        e: Option<u32>,
    },
    /// Monomial ideal invariants, or a seeded AM-GM sweep.
    Newton {
        /// Comma-separated monomials.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        monomial: Option<String>,
        /// Check K random m-primary monomial ideals.
        #[arg(long)]
        random: Option<usize>,
        /// Largest number of variables in the random sweep.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Asymptotic Arnold multiplicity and valuations of a graded sequence.
    Asym {
        /// Largest m (default 2048).
        #[arg(long)]
        mmax: Option<u64>,
        /// Use the powers of this monomial ideal instead of the hyperbola
        /// sequence.
        #[arg(long)]
        powers: Option<String>,
        /// Comma-separated weight vector, e.g. "1,1".
        #[arg(long)]
        valuation: Option<String>,
    },
    /// Compare lct_0 with fpt of the reductions mod p.
    Compare {
        /// An integer polynomial (diagonal, cubic cone or monomial).
        #[arg(long, conflicts_with = "diagonal")]
        poly: Option<String>,
        /// Exponents of x_1^a_1 + ... + x_n^a_n, e.g. "2,3".
        #[arg(long, required_unless_present = "poly")]
        diagonal: Option<String>,
        /// Comma-separated primes.
        #[arg(long, conflicts_with = "pmax")]
        primes: Option<String>,
        /// Every prime up to this bound (default 100).
        #[arg(long)]
        pmax: Option<u64>,
        /// Frobenius horizon for enclosures (default 2).
        #[arg(long)]
        e: Option<u32>,
    },
    /// Ordinarity of a plane cubic and fpt of its cone.
    Ordinary {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
    },
}

/// Failures of a run, mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input or a violated precondition: exit 2.
    Input(String),
    /// A resource cap was hit: exit 3 under `--strict`, else 1.
    Budget(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            Error::ExponentOverflow | Error::Infeasible => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Output of one invocation: exit status and the two streams.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I, budget_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let budget = match budget_env.map(config::parse_budget).transpose() {
        Ok(b) => b.unwrap_or_default(),
        Err(e) => return failure(e, false),
    };
    let (e_max, m_max, grid) = match &cli.command {
        Command::Fpt { e, .. } | Command::Tau { e, .. } | Command::Compare { e, .. } => (*e, None, None),
        Command::Nu { e, .. } => (Some(*e), None, None),
        Command::Fjump { e, grid, .. } => (*e, None, *grid),
        Command::Asym { mmax, .. } => (None, *mmax, None),
        _ => (None, None, None),
    };
    let config = Config {
        e_max,
        m_max,
        budget,
        grid,
        format: match cli.global.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        strict: cli.global.strict,
        seed: cli.global.seed,
    };
    match commands::dispatch(&cli.command, config.clone()) {
        Ok(report) => finish(report, &config),
        Err(e) => failure(e, config.strict),
    }
}

fn finish(report: Report, config: &Config) -> Outcome {
    let stdout = report.render(config.format);
    let code = if config.strict && !report.certified { 3 } else { 0 };
    let stderr = if code == 3 {
        "error: result is not certified (--strict)\n".to_string()
    } else {
        String::new()
    };
    Outcome { code, stdout, stderr }
}

fn failure(e: CliError, strict: bool) -> Outcome {
    let (code, msg) = match e {
        CliError::Input(m) => (2, m),
        CliError::Budget(m) => (if strict { 3 } else { 1 }, m),
        CliError::Internal(m) => (1, m),
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn main() -> ExitCode {
    let env = std::env::var("THRESHOLDS_BUDGET").ok();
    let out = run(std::env::args_os(), env.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
