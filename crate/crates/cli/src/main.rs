use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dfinite::cli::{parse_points, parse_system, render_error, run, Command, RunOptions};
use dfinite::error::{Error, Result};
use dfinite::syntax::parse_rationals;

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    /// reduced Gröbner basis, head data and rank
    Gb,
    /// ordinary point, apparent or non-apparent singularity
    Classify,
    /// deterministic left multiple with an ordinary point
    Desingularize,
    /// left multiple built from exponential solutions at random points
    DesingularizeRandom,
    /// indicial polynomials and candidate initial exponents
    Indicial,
    /// truncated power-series solutions at an ordinary point
    Series,
    /// truncated power-series solutions at an apparent singularity
    SeriesApparent,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Gb => Command::Gb,
            Cmd::Classify => Command::Classify,
            Cmd::Desingularize => Command::Desingularize,
            Cmd::DesingularizeRandom => Command::DesingularizeRandom,
            Cmd::Indicial => Command::Indicial,
            Cmd::Series => Command::Series,
            Cmd::SeriesApparent => Command::SeriesApparent,
        }
    }
}

/// Points and power-series solutions of D-finite systems of linear PDEs.
#[derive(Parser)]
#[command(name = "dfinite", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// system file; `-` or nothing reads standard input
    file: Option<PathBuf>,
    /// point to work at, e.g. `1,-2/3`
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// truncation order of series
    #[arg(long)]
    order: Option<u32>,
    /// seed for random points
    #[arg(long)]
    seed: Option<u64>,
    /// explicit random points, e.g. `19,23;1,2`
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// print a JSON report
    #[arg(long)]
    json: bool,
}

fn read_input(file: Option<&PathBuf>) -> Result<String> {
    let mut text = String::new();
    let res = match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|t| text = t),
        _ => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|e| Error::Structural(format!("cannot read input: {e}")))?;
    Ok(text)
}

fn execute(args: &Args) -> Result<String> {
    let sys = parse_system(&read_input(args.file.as_ref())?)?;
    let opts = RunOptions {
        point: args.point.as_deref().map(parse_rationals).transpose()?,
        order: args.order,
        seed: args.seed,
        points: args.points.as_deref().map(parse_points).transpose()?,
    };
    Ok(run(args.command.into(), &sys, &opts)?.render(args.json))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = render_error(&e, args.json);
            if args.json {
                print!("{msg}");
            } else {
                eprint!("{msg}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
