use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toeprank::cli::{self, Outcome, VerifyOptions};
use toeprank::FieldSpec;

#[derive(Parser)]
#[command(name = "toeprank", version, about = "Term rank and rank witnesses of block Toeplitz patterns")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified term rank of T_k(H).
    TermRank {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// 0/1 parameter assignment attaining the term rank.
    Witness {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "gf2", value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long)]
        json: bool,
    },
    /// Re-check every certificate and, on small inputs, compare against brute force.
    Verify {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// The δ-curve of G(H); with -k, the selected cardinality.
    Delta {
        file: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Best rank over random parameter draws (a lower bound on the maximum rank).
    Probe {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "gfP:65521", value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    cli::parse_field(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_INPUT } else { cli::EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome: Outcome = match args.command {
        Command::TermRank { file, k, json } => cli::cmd_term_rank(&file, k, json),
        Command::Witness { file, k, field, json } => cli::cmd_witness(&file, k, field, json),
        Command::Verify { file, k, seed, trials, inject_fault } => {
            cli::cmd_verify(&file, k, VerifyOptions { seed, trials, inject_fault })
        }
        Command::Delta { file, k } => cli::cmd_delta(&file, k),
        Command::Probe { file, k, field, seed, trials } => cli::cmd_probe(&file, k, field, trials, seed),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
