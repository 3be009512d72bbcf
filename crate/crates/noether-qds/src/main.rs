use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use noether_qds::cli::{
    cmd_classical_check, cmd_quantum_analyze, cmd_verify, OutputFormat, QuantumOptions,
};

#[derive(Parser)]
#[command(
    name = "noether-qds",
    version,
    about = "Noether constants of classical and quantum Markov semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum FormatArg {
    Json,
    #[default]
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a random variable is a constant of a classical Markov
    /// generator (exit 0 = constant, 1 = not, 2 = bad input).
    ClassicalCheck {
        /// Problem document (JSON, kind "classical").
        input: PathBuf,
        /// Comma-separated time grid for the distribution check.
        #[arg(long, value_delimiter = ',')]
        time_grid: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Analyze a quantum problem document: fixed points, commutant,
    /// postulate (P), per-observable Noether checks, and optionally the
    /// conditional expectation.
    QuantumAnalyze {
        /// Problem document (JSON, kind "quantum").
        input: PathBuf,
        /// Assert that the fixed-point algebra equals the commutant.
        #[arg(long)]
        fixed_points: bool,
        /// Assert that the observable "A" is a Noether constant.
        #[arg(long)]
        constants: bool,
        /// Assert that postulate (P) holds.
        #[arg(long)]
        stationary: bool,
        /// Compute the conditional expectation of "A" onto the constants
        /// (exit 3 when postulate (P) fails).
        #[arg(long)]
        condexp: bool,
        /// Override the decision tolerances (commute and subspace).
        #[arg(long)]
        tol: Option<f64>,
        /// Comma-separated time grid for residual diagnostics.
        #[arg(long, value_delimiter = ',')]
        time_grid: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Run the equivalence suites over a recipe file or the built-in
    /// "paper-suite" batch (exit 0 iff everything passes).
    Verify {
        /// Recipe file path, or "paper-suite".
        #[arg(default_value = "paper-suite")]
        target: String,
        /// Base seed (defaults to $NOETHER_QDS_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Rescale the per-suite instance counts.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::ClassicalCheck {
            input,
            time_grid,
            format,
        } => cmd_classical_check(&input, time_grid.as_deref(), format.into()),
        Command::QuantumAnalyze {
            input,
            fixed_points,
            constants,
            stationary,
            condexp,
            tol,
            time_grid,
            format,
        } => cmd_quantum_analyze(
            &input,
            &QuantumOptions {
                assert_fixed_points: fixed_points,
                assert_constants: constants,
                assert_stationary: stationary,
                want_condexp: condexp,
                tol,
                time_grid,
                format: format.into(),
            },
        ),
        Command::Verify {
            target,
            seed,
            trials,
            format,
        } => cmd_verify(&target, seed, trials, format.into()),
    };
    ExitCode::from(code as u8)
}
