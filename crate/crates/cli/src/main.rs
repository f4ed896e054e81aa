//! `curvecheck`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 the inputs are
//! mathematically infeasible or the checks disagree.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

const CURVE_HELP: &str = "Curve in the form `y^m = <poly> mod p`, where
  poly := ['+'|'-'] term (('+'|'-') term)*
  term := [uint]['*']['x'['^' uint]]
Whitespace is ignored; coefficients are reduced mod p.";

#[derive(Debug, Parser)]
#[command(name = "curvecheck", version, about = "Invariants of cyclic covers of the line over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus, point counts, Hasse-Witt matrix and p-rank verdict of a curve.
    Classify(ClassifyArgs),
    /// Action of the automorphism group on holomorphic differentials of y^m = x^p - x.
    Rep(RepArgs),
    /// Exhaustive divisibility searches over small genus decompositions.
    Search(SearchArgs),
    /// Divisibility bounds, the ordinary automorphism bound and closed-form case values.
    Bounds(BoundsArgs),
    /// Riemann-Hurwitz with one unknown among g_X, g_Y and the group order.
    Hurwitz(HurwitzArgs),
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(help = CURVE_HELP)]
    curve: String,
    /// Extension degrees for point counts.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2])]
    e: Vec<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct RepArgs {
    #[arg(long)]
    p: u64,
    /// Must divide p + 1.
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpecArg {
    TameOutside,
    TameInside,
    Mersenne,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    spec: SpecArg,
    #[arg(long, default_value_t = 200)]
    p_max: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKindArg {
    MaxRough,
    MinRough,
    MaxFine,
    MinFine,
    FineCor,
    AutOrdinary,
    #[value(name = "case-I")]
    CaseI,
    #[value(name = "case-II-a")]
    CaseIIa,
    #[value(name = "case-II-b")]
    CaseIIb,
    #[value(name = "case-II-c")]
    CaseIIc,
    #[value(name = "case-IV-final")]
    CaseIVFinal,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKindArg,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long)]
    pub c: Option<u64>,
    /// d in the genus decomposition g = c(p-1)/2 + d p.
    #[arg(long, alias = "d")]
    pub genus_d: Option<u64>,
    /// d = (q - 1)/E in the one-wild, two-tame case.
    #[arg(long)]
    pub caseiv_d: Option<u64>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub q_prime: Option<u64>,
    #[arg(long)]
    pub b1: Option<u64>,
    #[arg(long)]
    pub b2: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    /// Genus of the cover.
    #[arg(long)]
    pub gx: Option<String>,
    /// Genus of the quotient.
    #[arg(long)]
    pub gy: Option<String>,
    /// Group order.
    #[arg(long)]
    pub order: Option<String>,
    /// Ramification data `e:d,e:d,...` (index and different exponent).
    #[arg(long, default_value = "")]
    pub ram: String,
    #[arg(long)]
    pub json: bool,
}

fn configure_threads() {
    if let Some(n) = std::env::var("CURVECHECK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let (result, json) = match cli.command {
        Command::Classify(a) => (commands::classify(&a.curve, &a.e), a.json),
        Command::Rep(a) => (commands::rep(a.p, a.m, a.seed), a.json),
        Command::Search(a) => (commands::search(a.spec, a.p_max), a.json),
        Command::Bounds(ref a) => (commands::bounds(a), a.json),
        Command::Hurwitz(ref a) => (commands::hurwitz(a), a.json),
    };
    match result {
        Ok(Output { json: doc, text, infeasible }) => {
            if json {
                println!("{doc}");
            } else {
                print!("{text}");
            }
            ExitCode::from(if infeasible { 2 } else { 0 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(2)
        }
    }
}
