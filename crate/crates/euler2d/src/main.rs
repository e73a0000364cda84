use std::process::ExitCode;

use clap::Parser;
use euler2d::{cmd_bench, cmd_simulate, cmd_verify, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(cfg) => cmd_simulate(&cfg),
        Command::Bench(args) => cmd_bench(&args),
        Command::Verify(args) => cmd_verify(args.level),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
