//! `jordan` command-line front end. [`dispatch`] parses arguments and runs a
//! command; [`run`] adds rendering, exit codes and panic capture.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use clap::{Parser, Subcommand};
use jordan_core::quotient::DEFAULT_ORDER_CAP;
use jordan_core::suite::DEFAULT_SEED;
use num_bigint::BigInt;

pub mod commands;
pub mod report;

use commands::{Family, GridFlags, VerifyGroup};
pub use report::{CheckRecord, CliError, RunReport, Summary};

#[derive(Debug, Parser)]
#[command(name = "jordan", version, about = "Exact arithmetic and finite-quotient checks for Wang groups")]
pub struct Cli {
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Include wall times (output is then no longer byte-stable)
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integer matrices: MATRIX is a file, `-`, or inline JSON
    #[command(subcommand)]
    Mat(MatCmd),
    /// ε(n) and k_max
    #[command(subcommand)]
    Numth(NumthCmd),
    /// Heisenberg group H(r)
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Wang group descriptors
    #[command(subcommand)]
    Wang(WangCmd),
    /// Finite quotients and their bounds
    #[command(subcommand)]
    Quot(QuotCmd),
    /// Run a verification suite
    Verify {
        #[arg(value_enum, default_value = "all")]
        group: VerifyGroup,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatCmd {
    Det { matrix: String },
    Charpoly { matrix: String },
    Snf { matrix: String },
    /// Column Hermite form H = A·U of a full-column-rank matrix
    Hnf { matrix: String },
    /// Cyclotomic factors of the characteristic polynomial, or Φ_D with --order
    Cyclo {
        matrix: Option<String>,
        #[arg(long)]
        order: Option<u64>,
    },
    RootsOfUnity { matrix: String },
}

#[derive(Debug, Subcommand)]
pub enum NumthCmd {
    Epsilon {
        #[arg(long)]
        degree: usize,
    },
    Kmax {
        #[arg(long)]
        matrix: String,
        /// Rational such as 0.41 or 2/7 [default: epsilon(n)]
        #[arg(long)]
        epsilon: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeisCmd {
    Mul {
        #[arg(long, default_value = "1")]
        r: BigInt,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Inv {
        #[arg(long, default_value = "1")]
        r: BigInt,
        #[arg(long)]
        x: String,
    },
    Pow {
        #[arg(long, default_value = "1")]
        r: BigInt,
        #[arg(long)]
        x: String,
        #[arg(long, allow_negative_numbers = true)]
        k: BigInt,
    },
    /// Evaluate a word such as "d1 d2^-1 d3^2"
    Word {
        #[arg(long, default_value = "1")]
        r: BigInt,
        word: String,
    },
    SubgroupIndex { subgroup: String },
    SubgroupType { subgroup: String },
    IsNormal { subgroup: String },
    Contains {
        subgroup: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WangCmd {
    Validate { descriptor: String },
    Classify { descriptor: String },
    Center { descriptor: String },
    CommutatorLattice { descriptor: String },
    /// Check the automorphism ψ of H(r) × ℤ
    PsiCheck {
        #[arg(long, default_value = "1")]
        r: BigInt,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuotCmd {
    Build {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    BoundCheck { spec: String },
    /// Verify the bound on every instance of a grid, one line per instance
    Grid {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        limits: GridFlags,
    },
    /// Split the subgroup generated by {"ambient", "generators"} as Γ₀' ⋊ ⟨δ'γ^k⟩
    Decompose { input: String },
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Result<RunReport, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let command = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let produced = execute(&cli)?;
    Ok(RunReport {
        command,
        result: produced.result,
        text: produced.text,
        checks: produced.checks,
        elapsed: start.elapsed(),
        json: cli.json,
        timings: cli.timings,
    })
}

fn execute(cli: &Cli) -> Result<commands::Produced, CliError> {
    use commands as c;
    match &cli.command {
        Command::Mat(m) => match m {
            MatCmd::Det { matrix } => c::mat_det(matrix),
            MatCmd::Charpoly { matrix } => c::mat_charpoly(matrix),
            MatCmd::Snf { matrix } => c::mat_snf(matrix),
            MatCmd::Hnf { matrix } => c::mat_hnf(matrix),
            MatCmd::Cyclo { matrix, order } => c::mat_cyclo(matrix.as_deref(), *order),
            MatCmd::RootsOfUnity { matrix } => c::mat_roots_of_unity(matrix),
        },
        Command::Numth(n) => match n {
            NumthCmd::Epsilon { degree } => c::numth_epsilon(*degree),
            NumthCmd::Kmax { matrix, epsilon } => c::numth_kmax(matrix, epsilon.as_deref()),
        },
        Command::Heis(h) => match h {
            HeisCmd::Mul { r, x, y } => c::heis_mul(r, x, y),
            HeisCmd::Inv { r, x } => c::heis_inv(r, x),
            HeisCmd::Pow { r, x, k } => c::heis_pow(r, x, k),
            HeisCmd::Word { r, word } => c::heis_word(r, word),
            HeisCmd::SubgroupIndex { subgroup } => c::heis_subgroup_index(subgroup),
            HeisCmd::SubgroupType { subgroup } => c::heis_subgroup_type(subgroup),
            HeisCmd::IsNormal { subgroup } => c::heis_is_normal(subgroup),
            HeisCmd::Contains { subgroup, x } => c::heis_contains(subgroup, x),
        },
        Command::Wang(w) => match w {
            WangCmd::Validate { descriptor } => c::wang_validate(descriptor),
            WangCmd::Classify { descriptor } => c::wang_classify(descriptor),
            WangCmd::Center { descriptor } => c::wang_center(descriptor),
            WangCmd::CommutatorLattice { descriptor } => c::wang_commutator_lattice(descriptor),
            WangCmd::PsiCheck { r } => c::wang_psi_check(r),
        },
        Command::Quot(q) => match q {
            QuotCmd::Build { spec, max_order } => c::quot_build(spec, *max_order),
            QuotCmd::BoundCheck { spec } => c::quot_bound_check(spec),
            QuotCmd::Grid { family, limits } => c::quot_grid(*family, limits),
            QuotCmd::Decompose { input } => c::quot_decompose(input),
        },
        Command::Verify { group } => c::verify(*group, cli.seed),
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Runs `argv` end to end: 0 OK, 1 a check failed, 2 usage or bad input, 3 internal error.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        let text = e.render().to_string();
        return match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Invocation { stdout: text, stderr: String::new(), code: 0 }
            }
            _ => Invocation { stdout: String::new(), stderr: text, code: 2 },
        };
    }
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(argv))) {
        Ok(Ok(report)) => Invocation { stdout: report.render(), stderr: String::new(), code: report.exit_code() },
        Ok(Err(e)) => Invocation { stdout: String::new(), stderr: format!("{e}\n"), code: e.exit_code() },
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            Invocation { stdout: String::new(), stderr: format!("{}\n", CliError::Internal(msg)), code: 3 }
        }
    }
}
