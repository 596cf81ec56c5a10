use clap::Parser;

use chronotag_cli::cli::{Cli, Command};
use chronotag_cli::{convert, score_cmd, stats};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convert(args) => convert::run(args),
        Command::Stats(args) => stats::run(&args.inputs),
        Command::Score(args) => score_cmd::run(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("chronotag: {e:#}");
            std::process::exit(chronotag_cli::EXIT_USAGE);
        }
    }
}
