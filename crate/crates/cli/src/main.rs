use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use genassoc::spec::{build, parse_doc};
use genassoc::{run, Command, Error, ExtRat, Method, RunOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Decompose,
    Gm,
    OtimesTable,
    TTable,
    Check,
    Axioms,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Decompose => Command::Decompose,
            Cmd::Gm => Command::Gm,
            Cmd::OtimesTable => Command::OtimesTable,
            Cmd::TTable => Command::TTable,
            Cmd::Check => Command::Check,
            Cmd::Axioms => Command::Axioms,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Sufficient,
    Fcondition,
    Oracle,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sufficient => Method::Sufficient,
            MethodArg::Fcondition => Method::Fcondition,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::All => Method::All,
        }
    }
}

/// Analyse two-place functions T(x,y) = f⁻¹(F(f(x), f(y))) built from a
/// piecewise generator f and a base operation F.
#[derive(Debug, Parser)]
#[command(name = "genassoc", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,

    /// Scenario spec (JSON).
    #[arg(long)]
    spec: PathBuf,

    /// Criteria to run for `check`.
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,

    /// Grid denominator D for tables and witness cubes.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    grid: Option<u32>,

    /// Point at which to evaluate G_M for `gm`.
    #[arg(long)]
    at: Option<String>,

    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Analyse generators outside the admissible class.
    #[arg(long)]
    force: bool,
}

fn execute(cli: &Cli) -> Result<(String, String), Error> {
    let text = std::fs::read_to_string(&cli.spec)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", cli.spec.display())))?;
    let mut doc = parse_doc(&text)?;
    doc.force |= cli.force;
    let spec = build(doc)?;
    let at = cli.at.as_deref().map(str::parse::<ExtRat>).transpose()?;
    let opts = RunOptions {
        method: cli.method.into(),
        grid: cli.grid,
        at,
    };
    let report = run(&spec, cli.command.into(), &opts)?;
    Ok((report.to_json(), report.summary()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((json, summary)) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                    print!("{summary}");
                }
                None => println!("{json}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let doc = serde_json::json!({ "error": { "message": e.to_string(), "exit_code": e.exit_code() } });
            if let Some(path) = &cli.out {
                let _ = std::fs::write(path, format!("{doc:#}\n"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
