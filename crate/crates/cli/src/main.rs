use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bv_core::io::Model;
use bv_core::report::{self, exit_code, Report, DEFAULT_SEED};
use bv_core::u2::U2Case;
use bv_core::Result;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Exact BV extension of finite-dimensional gauge theories.
#[derive(Parser)]
#[command(name = "bvx", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the JSON mirror instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the random probes.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum resolution depth.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Maximum solver step.
    #[arg(long = "max-q", global = true)]
    max_q: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partial derivatives, their gcd and the cofactors.
    Jacobian {
        #[arg(long)]
        model: PathBuf,
    },
    /// Tate resolution and the type-β roster.
    Tate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Solve the master equation on the extended space.
    Extend {
        #[arg(long)]
        model: PathBuf,
    },
    /// Evaluate {S,S} for a candidate action.
    CheckCme {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        action: PathBuf,
    },
    /// Apply d = {S,·} twice to a target.
    Brst {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Run a shipped U(2) golden fixture.
    U2 {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| bv_core::Error::Model(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.cmd {
        Cmd::Jacobian { model } => report::jacobian_report(&Model::load(model)?),
        Cmd::Tate { model } => report::tate_report(Model::load(model)?, cli.cap),
        Cmd::Extend { model } => report::extend_report(Model::load(model)?, cli.cap, cli.max_q, seed),
        Cmd::CheckCme { model, action } => report::check_report(Model::load(model)?, &read(action)?, cli.cap),
        Cmd::Brst { model, action, target } => {
            report::brst_report(Model::load(model)?, &read(action)?, target, cli.cap)
        }
        Cmd::U2 { case } => report::u2_report(U2Case::from_number(*case).expect("clap range"), cli.max_q, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(r) => {
            let text = if cli.json { r.to_json() + "\n" } else { r.to_text() };
            // a closed pipe is the reader's choice, not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(r.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
