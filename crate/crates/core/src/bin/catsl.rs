use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use catsl::harness::{run_suite, simplify_command, Params};
use catsl::strata::component_table;
use catsl::Error;

#[derive(Parser)]
#[command(name = "catsl", version, about = "Exact checks for categorical sl_2 and sl_m actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: tensor, braid, nilhecke, kernel-oracle, twists, strata or all.
    Verify {
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        deg: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "max-basis")]
        max_basis: Option<u128>,
        /// Key = value file with default parameters; flags win.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Record per-check wall time (makes reports run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a word in divided powers.
    Simplify {
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Components of Z(k,N).
    Strata {
        #[arg(long)]
        k: u32,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long)]
        json: bool,
    },
}

fn fail_usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify { suite, m, big_n, k, n, ell, deg, seed, max_basis, config, timings, json } => {
            let flags = Params { m, n_big: big_n, k, n, ell, deg, seed, max_basis, timings };
            let params = match config {
                Some(path) => {
                    let text = match std::fs::read_to_string(&path) {
                        Ok(t) => t,
                        Err(e) => return fail_usage(format!("{}: {e}", path.display())),
                    };
                    match Params::parse_config(&text) {
                        Ok(c) => flags.or(&c),
                        Err(e) => return fail_usage(e),
                    }
                }
                None => flags,
            };
            match run_suite(&suite, &params) {
                Ok(report) => {
                    if json {
                        println!("{}", report.to_json());
                    } else {
                        print!("{}", report.to_table());
                    }
                    ExitCode::from(if report.passed() { 0 } else { 1 })
                }
                Err(e @ (Error::InvalidArgument(_) | Error::Capacity { .. } | Error::Parse(_))) => fail_usage(e),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Simplify { word, weight, window } => match simplify_command(&word, &weight, window.as_deref()) {
            Ok(out) => {
                println!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => fail_usage(e),
        },
        Command::Strata { k, big_n, json } => match component_table(k, big_n) {
            Ok(t) => {
                if json {
                    println!("{}", t.to_json());
                } else {
                    print!("{}", t.to_table());
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail_usage(e),
        },
    }
}
