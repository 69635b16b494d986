use std::process::ExitCode;

use clap::Parser;
use subforge_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    match result {
        Ok((report, outcome)) => {
            println!("{}", report.to_json());
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("subforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
