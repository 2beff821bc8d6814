//! `wharm`: evaluation, verification suites, zero certification, angle-family
//! tooling and obstruction traces.
//!
//! Exit codes: 0 success, 1 verification failures, 2 flag errors, 3 domain
//! errors (the JSON on stdout carries the message and any witness), 4
//! unwritable output.

mod commands;
mod parse;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use wharm_core::angles::Angle;
use wharm_core::AlphaParam;

#[derive(Parser, Debug)]
#[command(name = "wharm", version, about = "Weighted harmonic functions: kernels, obstructions, zeros and angle families")]
pub struct Cli {
    /// Numerical tolerance (series truncation, suite comparisons).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for the ChaCha8 generator used by verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a kernel, polynomial or hypergeometric factor.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Number of random cases per randomized check.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Functions of angles: construction, admissibility, minimal families.
    #[command(subcommand)]
    Foa(FoaCmd),
    /// Roots of a polynomial a₀ + a₁z + … given by coefficients or by (α, k).
    Roots(RootsArgs),
    /// Eneström–Kakeya certificate for p_{k,α} on the unit circle.
    Certify(CertifyArgs),
    /// Sample an obstruction function along a ray or vertical geodesic.
    Trace(TraceArgs),
    /// Recover obstruction coefficients from evaluations.
    Recover(RecoverArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hypergeom,
    PolyKernel,
    Pullback,
    Obstruction,
    Zeros,
    Angles,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hypergeom => "hypergeom",
            Suite::PolyKernel => "poly-kernel",
            Suite::Pullback => "pullback",
            Suite::Obstruction => "obstruction",
            Suite::Zeros => "zeros",
            Suite::Angles => "angles",
            Suite::All => "all",
        }
    }
}

#[derive(Args, Debug)]
pub struct AlphaZ {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha)]
    pub alpha: AlphaParam,
    /// Point as `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub z: Complex64,
}

#[derive(Args, Debug)]
pub struct AlphaKZ {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha)]
    pub alpha: AlphaParam,
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    pub z: Complex64,
}

#[derive(Subcommand, Debug)]
pub enum EvalCmd {
    /// P_α(z) on the unit disc.
    Kernel(AlphaZ),
    /// F(−α, k; k+1; x).
    FFactor {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x: f64,
    },
    /// p_{k,α}(z).
    P(AlphaKZ),
    /// s_{k,α}(z), the one-variable binomial truncation.
    S(AlphaKZ),
    /// h_{k,α}(z).
    H(AlphaKZ),
    /// (iA)^k P_α(z) via h_{k,α}(φ(z))·P_α(z).
    IaPower(AlphaKZ),
    /// Poisson integral of δ^{(m)} or a trigonometric polynomial.
    Integral {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha)]
        alpha: AlphaParam,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        z: Complex64,
        /// Order m of the Dirac derivative δ^{(m)}.
        #[arg(long, conflicts_with = "trig")]
        dirac: Option<u32>,
        /// Fourier coefficients `k:re,im;k:re,im;…`.
        #[arg(long, allow_hyphen_values = true)]
        trig: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArg {
    /// JSON array of {"angle", "eta"}, or `@path` to read it from a file.
    #[arg(long)]
    pub family: String,
}

#[derive(Subcommand, Debug)]
pub enum FoaCmd {
    /// Build an 𝒜₀ family: a finite one with `--tail`, else a prefix of the infinite one.
    Construct {
        /// Comma-separated angles, `m/n` for (m/n)π or `irr:label:approx`.
        #[arg(long, value_delimiter = ',', value_parser = parse::angle)]
        angles: Vec<Angle>,
        /// Irrational closing angle for the finite construction.
        #[arg(long, value_parser = parse::angle)]
        tail: Option<Angle>,
    },
    /// Admissibility report; exits 3 when the family is not admissible.
    Check {
        #[command(flatten)]
        family: FamilyArg,
        /// Check every k up to this limit instead of the exact range analysis.
        #[arg(long)]
        brute_force: Option<u64>,
    },
    /// Whether the family is minimal, and a minimal family below it.
    Minimize {
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Greedy minimal lower bound with its certificate.
    LowerBound {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    /// Coefficients a₀;a₁;… each `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["alpha", "k"])]
    pub coeffs: Option<String>,
    /// With `--k`: roots of Σ (α+1)_j/j! z^j, j ≤ k.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha, requires = "k")]
    pub alpha: Option<AlphaParam>,
    #[arg(long, requires = "alpha")]
    pub k: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha)]
    pub alpha: AlphaParam,
    #[arg(long)]
    pub k: u32,
    /// Include numerical roots even for a decided certificate.
    #[arg(long)]
    pub roots: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceKind {
    Ray,
    Geodesic,
}

#[derive(Args, Debug)]
pub struct ObstructionArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::alpha)]
    pub alpha: AlphaParam,
    /// c₀;c₁;… of Σ c_k (Im z)^{α+1} p_{k,α}(z), each `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Evaluate u(z − center) instead of u(z).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub center: f64,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long, value_enum)]
    pub what: TraceKind,
    #[command(flatten)]
    pub function: ObstructionArgs,
    /// Ray angle as `m/n` (times π) or radians via `irr:label:value`.
    #[arg(long, value_parser = parse::angle, required_if_eq("what", "ray"))]
    pub theta: Option<Angle>,
    /// Abscissa of the vertical geodesic.
    #[arg(long, allow_hyphen_values = true, required_if_eq("what", "geodesic"))]
    pub x: Option<f64>,
    /// Normalizing exponent on rays; defaults to n + α + 1.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub from: f64,
    #[arg(long, default_value_t = 1e4)]
    pub to: f64,
    /// Number of geometrically spaced samples.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub function: ObstructionArgs,
    /// Highest degree to fit; defaults to the degree of the input.
    #[arg(long)]
    pub n_max: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    let code = match &outcome.error {
        Some(message) => {
            eprintln!("wharm: {message}");
            outcome.code
        }
        None => outcome.code,
    };
    if let Some(text) = outcome.text {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        };
        if let Err(message) = written {
            eprintln!("wharm: {message}");
            return ExitCode::from(4);
        }
    }
    ExitCode::from(code)
}
