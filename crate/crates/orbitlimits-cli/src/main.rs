mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbitlimits::Error;
use serde_json::Value;

use commands::{Failure, Options, Output};

#[derive(Parser)]
#[command(name = "orbitlimits", version, about = "Stabilizers, local models and limits of group orbits, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input document ("-" for stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Gradient tolerance for the Kempf descent.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Complement choice for local models.
    #[arg(long, global = true, value_enum, default_value_t = Policy::Orthogonal)]
    policy: Policy,
}

#[derive(Subcommand)]
enum Command {
    /// Stabilizer subalgebra of a form or matrix.
    Stabilizer,
    /// Local model (H, S, N, θ) at a point.
    LocalModel,
    /// Limit of a form or matrix along a 1-PS and the limit algebra.
    Limit,
    /// Is a nilpotent orbit in the projective closure of a conjugacy class?
    Closure,
    /// The J_n or J_{a,b} slice reports.
    Slice,
    /// Second fundamental form and Gauss-equation curvature of an orbit.
    Curvature,
    /// Kempf descent and grid optimum.
    Kempf,
    /// Run a worked example against its pinned values ("all" runs every id).
    Reproduce { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Orthogonal,
    Explicit,
}

fn read_input(path: Option<&PathBuf>) -> Result<Value, Failure> {
    let text = match path {
        None => return Err(Failure::Input("--input FILE is required for this command".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            s
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let opts = Options { seed: cli.seed, tol: cli.tol, policy: cli.policy };
    let input = || read_input(cli.input.as_ref());
    match &cli.command {
        Command::Stabilizer => commands::stabilizer(&input()?),
        Command::LocalModel => commands::local_model(&input()?, &opts),
        Command::Limit => commands::limit(&input()?, &opts),
        Command::Closure => commands::closure(&input()?),
        Command::Slice => commands::slice(&input()?, &opts),
        Command::Curvature => commands::curvature(&input()?),
        Command::Kempf => commands::kempf(&input()?, &opts),
        Command::Reproduce { id } => commands::reproduce(id, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.doc).expect("serializable")),
                Format::Table => print!("{}", out.text),
            }
            ExitCode::from(if out.mismatch { 4 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}
