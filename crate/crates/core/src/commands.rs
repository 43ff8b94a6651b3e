//! The command-line front end. Each command renders its output to a string so
//! the binary only has to print it and pick an exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::campaign::{self, random_solution, SuiteSelection, VerificationReport};
use crate::cubic::Cubic;
use crate::error::Error;
use crate::extended::ExtendedComplex::{self, Finite};
use crate::figure::{theorem_figure, DEFAULT_GRID, FIGURE_TOL};
use crate::variety::{lift_solution, reduce_solution, SolutionTriple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Usage(_) | CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Text written to stdout together with the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cubic-polar", version, about = "Polarization of complex cubics: reduction, verification and figures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients, discriminant, star points and the map W of a cubic.
    Info(InfoArgs),
    /// Run seeded randomized verification suites.
    Verify(VerifyArgs),
    /// Complete (z1, z2) to a solution and reduce it.
    Reduce(ReduceArgs),
    /// Emit the seven-circles figure of a solution as JSON and optionally SVG.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct RootsArg {
    /// The three roots, e.g. `--roots 1 1-i -1+i`.
    #[arg(long, num_args = 3, value_names = ["R1", "R2", "R3"], allow_hyphen_values = true, required = true)]
    pub roots: Vec<ExtendedComplex>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub roots: RootsArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, reduction, variety, scc, mobius or appendix.
    #[arg(long, default_value = "all")]
    pub suite: SuiteSelection,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long, default_value_t = campaign::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON reports to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub roots: RootsArg,
    #[arg(long, allow_hyphen_values = true)]
    pub z1: ExtendedComplex,
    #[arg(long, allow_hyphen_values = true)]
    pub z2: ExtendedComplex,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[command(flatten)]
    pub roots: RootsArg,
    /// Defaults to a seeded random admissible point together with `--z2`.
    #[arg(long, allow_hyphen_values = true, requires = "z2")]
    pub z1: Option<ExtendedComplex>,
    #[arg(long, allow_hyphen_values = true, requires = "z1")]
    pub z2: Option<ExtendedComplex>,
    /// Seed for choosing (z1, z2) when they are not given.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = FIGURE_TOL)]
    pub tol: f64,
    /// JSON destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Print the JSON document even when `--out` is given.
    #[arg(long)]
    pub json: bool,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Info(args) => cmd_info(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Reduce(args) => cmd_reduce(&args),
        Command::Figure(args) => cmd_figure(&args),
    }
}

fn parse_cubic(roots: &RootsArg) -> Result<Cubic, CliError> {
    let r: Vec<Complex64> = roots
        .roots
        .iter()
        .map(|z| z.finite().ok_or_else(|| CliError::Usage("roots must be finite".into())))
        .collect::<Result<_, _>>()?;
    Ok(Cubic::from_roots(r[0], r[1], r[2])?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Serialize)]
struct InfoDocument {
    roots: [Complex64; 3],
    a: Complex64,
    b: Complex64,
    c: Complex64,
    discriminant: Complex64,
    equilateral: bool,
    u_star: ExtendedComplex,
    v_star: ExtendedComplex,
    /// `[[-T_u, -T_v], [S_u, S_v]]`
    w: [[Complex64; 2]; 2],
}

pub fn cmd_info(args: &InfoArgs) -> Result<Outcome, CliError> {
    let cubic = parse_cubic(&args.roots)?;
    let (a, b, c) = cubic.coefficients();
    let f = cubic.forms();
    let doc = InfoDocument {
        roots: cubic.roots(),
        a,
        b,
        c,
        discriminant: cubic.discriminant(),
        equilateral: cubic.is_equilateral(),
        u_star: cubic.u_star(),
        v_star: cubic.v_star(),
        w: [[-f.t_u, -f.t_v], [f.s_u, f.s_v]],
    };
    if args.json {
        return Ok(Outcome::ok(to_json(&doc)));
    }
    let z = |v: Complex64| Finite(v).to_string();
    let mut out = String::new();
    out += &format!("roots         {}  {}  {}\n", z(doc.roots[0]), z(doc.roots[1]), z(doc.roots[2]));
    out += &format!("a             {}\n", z(a));
    out += &format!("b             {}\n", z(b));
    out += &format!("c             {}\n", z(c));
    out += &format!("discriminant  {}\n", z(doc.discriminant));
    out += &format!("equilateral   {}\n", doc.equilateral);
    out += &format!("u*            {}\n", doc.u_star);
    out += &format!("v*            {}\n", doc.v_star);
    out += &format!("W             [{}  {}]\n", z(doc.w[0][0]), z(doc.w[0][1]));
    out += &format!("              [{}  {}]\n", z(doc.w[1][0]), z(doc.w[1][1]));
    Ok(Outcome::ok(out))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let reports: Vec<VerificationReport> = campaign::run(args.suite, args.seed, args.cases, args.tol);
    let json = to_json(&reports);
    if let Some(path) = &args.out {
        write_file(path, &json)?;
    }
    let stdout = if args.json {
        json
    } else {
        reports.iter().map(|r| r.summary_line() + "\n").collect()
    };
    let code = if reports.iter().all(VerificationReport::passed) { EXIT_OK } else { EXIT_VERIFICATION };
    Ok(Outcome { stdout, code })
}

#[derive(Debug, Serialize)]
struct ReduceDocument {
    triple: [ExtendedComplex; 3],
    reduced: [ExtendedComplex; 3],
    product: ExtendedComplex,
    residuals: ReduceResiduals,
}

#[derive(Debug, Serialize)]
struct ReduceResiduals {
    solution: f64,
    product: f64,
    round_trip: f64,
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<Outcome, CliError> {
    let cubic = parse_cubic(&args.roots)?;
    let t = SolutionTriple::from_pair(&cubic, args.z1, args.z2)?;
    let reduced = reduce_solution(&cubic, &t)?;
    let product = reduced[0].checked_mul(reduced[1])?.checked_mul(reduced[2])?;
    let lifted = lift_solution(&cubic, reduced[0], reduced[1])?;
    let doc = ReduceDocument {
        triple: t.z,
        reduced,
        product,
        residuals: ReduceResiduals {
            solution: cubic.polarize_residual(t.z),
            product: product.chordal_distance(Finite(Complex64::new(-1.0, 0.0))),
            round_trip: (0..3).map(|k| lifted.z[k].chordal_distance(t.z[k])).fold(0.0, f64::max),
        },
    };
    if args.json {
        return Ok(Outcome::ok(to_json(&doc)));
    }
    let list = |v: &[ExtendedComplex; 3]| v.iter().map(|z| z.to_string()).collect::<Vec<_>>().join("  ");
    let r = &doc.residuals;
    let out = format!(
        "triple      {}\nreduced     {}\nproduct     {}\nresiduals   solution={:.3e} product={:.3e} round_trip={:.3e}\n",
        list(&doc.triple),
        list(&doc.reduced),
        doc.product,
        r.solution,
        r.product,
        r.round_trip
    );
    Ok(Outcome::ok(out))
}

/// The solution drawn for `figure` when no `(z1, z2)` is given.
pub fn seeded_solution(cubic: &Cubic, seed: u64) -> SolutionTriple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_solution(&mut rng, cubic)
}

pub fn cmd_figure(args: &FigureArgs) -> Result<Outcome, CliError> {
    let cubic = parse_cubic(&args.roots)?;
    let t = match (args.z1, args.z2) {
        (Some(z1), Some(z2)) => SolutionTriple::from_pair(&cubic, z1, z2)?,
        _ => seeded_solution(&cubic, args.seed),
    };
    let doc = theorem_figure(&cubic, &t, args.grid, args.tol)?;
    let json = doc.to_json();
    if let Some(path) = &args.svg {
        write_file(path, &doc.to_svg())?;
    }
    let stdout = match &args.out {
        Some(path) => {
            write_file(path, &json)?;
            if args.json {
                json
            } else {
                let failing: Vec<&String> =
                    doc.residuals.iter().filter(|(_, r)| !(**r <= args.tol)).map(|(k, _)| k).collect();
                let status = if doc.pass { "pass".to_string() } else { format!("failed: {}", json!(failing)) };
                format!("wrote {} ({status})\n", path.display())
            }
        }
        None => json,
    };
    Ok(Outcome { stdout, code: if doc.pass { EXIT_OK } else { EXIT_VERIFICATION } })
}
