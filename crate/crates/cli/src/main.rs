use std::path::PathBuf;
use std::process::ExitCode;

use art_cli::{execute, parse_workspace_with_bound, Command, Options};
use art_core::algebra::DEFAULT_MAX_PATH_LEN;
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Tau,
    Transpose,
    Ext,
    Stablehom,
    Defect,
    ArSequence,
    DeterminedEpi,
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Tau => Command::Tau,
            Cmd::Transpose => Command::Transpose,
            Cmd::Ext => Command::Ext,
            Cmd::Stablehom => Command::StableHom,
            Cmd::Defect => Command::Defect,
            Cmd::ArSequence => Command::ArSequence,
            Cmd::DeterminedEpi => Command::DeterminedEpi,
            Cmd::Verify => Command::Verify,
        }
    }
}

/// Auslander-Reiten translates, stable Homs, Ext and defects over
/// bound quiver algebras.
///
/// The environment variable ART_MAX_PATH_LEN overrides the bound on path
/// length used to check that the relations are admissible (default 32).
#[derive(Debug, Parser)]
#[command(name = "art", version)]
struct Args {
    command: Cmd,
    /// Workspace TOML file.
    #[arg(long)]
    workspace: PathBuf,
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    #[arg(long)]
    seq: Option<String>,
    /// Print explicit matrices.
    #[arg(long)]
    verbose: bool,
    /// Seed for the randomized searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Check every workspace module (the default for `verify`).
    #[arg(long)]
    all: bool,
}

fn max_path_len() -> Result<usize, String> {
    match std::env::var("ART_MAX_PATH_LEN") {
        Ok(v) => v.trim().parse().map_err(|_| format!("ART_MAX_PATH_LEN must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_PATH_LEN),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if args.all && args.module.is_some() {
        return input_error("--all and --module exclude each other");
    }
    let bound = match max_path_len() {
        Ok(b) => b,
        Err(e) => return input_error(e),
    };
    let text = match std::fs::read_to_string(&args.workspace) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.workspace.display())),
    };
    let ws = match parse_workspace_with_bound(&text, bound) {
        Ok(w) => w,
        Err(e) => return input_error(format!("{}:\n{e}", args.workspace.display())),
    };
    let opts = Options {
        module: args.module,
        from: args.from,
        to: args.to,
        seq: args.seq,
        verbose: args.verbose,
        seed: args.seed,
    };
    let outcome = match execute(args.command.into(), &ws, &opts, echo) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", outcome.text);
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, outcome.report.to_json() + "\n") {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    if outcome.report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
