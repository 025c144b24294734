//! `semimoment`: file-driven checks for truncated moment data, sum-of-squares
//! certificates and operator positivity certificates.
//!
//! Every run prints one JSON report line on stdout and a short summary on
//! stderr. Exit status is 0 for a passing verdict, 1 for a failing verdict
//! and 2 for unusable input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semimoment::{DEFAULT_TOL, PSD_TOL};

use report::{Inputs, RunReport, Verdict};

#[derive(Parser)]
#[command(name = "semimoment", version, about = "Truncated moment problem and positivity certificate checks")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Absolute tolerance for scalar comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Relative tolerance for PSD verdicts (scaled by max(1, Frobenius norm)).
    #[arg(long, global = true, default_value_t = PSD_TOL)]
    pub psd_tol: f64,
    /// Kernel sections as JSON, e.g. '[[[0,0],[1,0]],[[1,1]]]'.
    #[arg(long, global = true)]
    pub sections: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_iter: usize,
    /// Write the produced artifact (data, measure, factor, ...) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetrize moment data and test kernel sections for positivity.
    MomentsCheck { data: PathBuf },
    /// Evaluate the Riesz functional on a sum of squares.
    Certify { data: PathBuf, certificate: PathBuf },
    /// Build a representing measure from parameters and verify it.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Exact conversion between real and complex moments.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Sum-of-squares factorization, decomposition and witnesses.
    #[command(subcommand)]
    Sos(SosCmd),
    /// Difference-set search and staircase constructions.
    #[command(subcommand)]
    Diffset(DiffsetCmd),
    /// Check a unitary power dilation certificate.
    #[command(subcommand)]
    Dilation(DilationCmd),
    /// Check a subnormality certificate.
    #[command(subcommand)]
    Subnormal(SubnormalCmd),
    /// Generate counterexample moment data.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    Havi { params: PathBuf },
    Lambda2new { params: PathBuf },
}

#[derive(Subcommand)]
pub enum TransformCmd {
    Real2complex { input: PathBuf },
    Complex2real { input: PathBuf },
}

#[derive(Subcommand)]
pub enum SosCmd {
    /// Factor a nonnegative univariate trigonometric polynomial as |q|².
    FejerRiesz { input: PathBuf },
    /// Search for a Gram certificate of a target over a monomial basis.
    Decompose { input: PathBuf },
    /// The polynomial |z - λ|² - ε².
    Witness { params: PathBuf },
}

#[derive(Subcommand)]
pub enum DiffsetCmd {
    /// Search for Λ in [0, B]^k with Λ - Λ equal to the given set.
    Test {
        /// JSON list of integers or of integer vectors.
        #[arg(long)]
        set: String,
        #[arg(long)]
        bound: i64,
    },
    /// Staircase Λ ⊂ Z² whose differences fill both closed quadrants.
    Quadrant {
        #[arg(long)]
        depth: i64,
    },
}

#[derive(Subcommand)]
pub enum DilationCmd {
    Check {
        tuple: PathBuf,
        /// Coefficient system file; omit to use --contraction.
        system: Option<PathBuf>,
        /// Use the contraction certificate for coordinate r.
        #[arg(long)]
        contraction: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum SubnormalCmd {
    Check {
        /// Operator tuple file with a single matrix.
        matrix: PathBuf,
        system: Option<PathBuf>,
        /// Use the Halmos–Bram system of order n.
        #[arg(long)]
        bram: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum GenCmd {
    /// Moments of |z|^{-2} dV on the unit disc for 1 <= m, n <= max.
    Dziury {
        #[arg(long, default_value_t = 6)]
        max: i64,
    },
    /// The δ-system on k <= m, n <= max.
    Kael {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        max: Option<i64>,
    },
    /// Atomic data near z^j = λ together with its separating witness.
    Annulus { params: PathBuf },
    /// Replace c_{k,l} of existing data by sqrt(c_kk c_ll + 1).
    SymmetryBreak {
        data: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::MomentsCheck { .. } => "moments-check",
            Command::Certify { .. } => "certify",
            Command::Construct(ConstructCmd::Havi { .. }) => "construct havi",
            Command::Construct(ConstructCmd::Lambda2new { .. }) => "construct lambda2new",
            Command::Transform(TransformCmd::Real2complex { .. }) => "transform real2complex",
            Command::Transform(TransformCmd::Complex2real { .. }) => "transform complex2real",
            Command::Sos(SosCmd::FejerRiesz { .. }) => "sos fejer-riesz",
            Command::Sos(SosCmd::Decompose { .. }) => "sos decompose",
            Command::Sos(SosCmd::Witness { .. }) => "sos witness",
            Command::Diffset(DiffsetCmd::Test { .. }) => "diffset test",
            Command::Diffset(DiffsetCmd::Quadrant { .. }) => "diffset quadrant",
            Command::Dilation(_) => "dilation check",
            Command::Subnormal(_) => "subnormal check",
            Command::Gen(GenCmd::Dziury { .. }) => "gen dziury",
            Command::Gen(GenCmd::Kael { .. }) => "gen kael",
            Command::Gen(GenCmd::Annulus { .. }) => "gen annulus",
            Command::Gen(GenCmd::SymmetryBreak { .. }) => "gen symmetry-break",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            let report = RunReport {
                command: String::new(),
                verdict: Verdict::Error,
                payload: serde_json::json!({}),
                inputs: Vec::new(),
                error: Some(e.kind().to_string()),
            };
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let mut inputs = Inputs::default();
    let outcome = match &cli.command {
        Command::MomentsCheck { data } => commands::moments_check(&cli.opts, &mut inputs, data),
        Command::Certify { data, certificate } => commands::certify(&cli.opts, &mut inputs, data, certificate),
        Command::Construct(c) => commands::construct(&cli.opts, &mut inputs, c),
        Command::Transform(c) => commands::transform(&cli.opts, &mut inputs, c),
        Command::Sos(c) => commands::sos(&cli.opts, &mut inputs, c),
        Command::Diffset(c) => commands::diffset(&cli.opts, c),
        Command::Dilation(c) => commands::dilation(&cli.opts, &mut inputs, c),
        Command::Subnormal(c) => commands::subnormal(&cli.opts, &mut inputs, c),
        Command::Gen(c) => commands::generate(&cli.opts, &mut inputs, c),
    };
    let report = match outcome {
        Ok(o) => {
            eprintln!("{name}: {} ({})", o.verdict, o.summary);
            RunReport { command: name.into(), verdict: o.verdict, payload: o.payload, inputs: inputs.digests, error: None }
        }
        Err(e) => {
            eprintln!("{name}: error: {e:#}");
            RunReport {
                command: name.into(),
                verdict: Verdict::Error,
                payload: serde_json::json!({}),
                inputs: inputs.digests,
                error: Some(format!("{e:#}")),
            }
        }
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    ExitCode::from(report.verdict.exit_code() as u8)
}
