//! Command-line front end: argument parsing, the versioned run report and
//! the exit-code contract (0 pass, 1 internal failure, 2 invalid input,
//! 3 bound violation).

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod verify;

pub use args::Cli;
pub use error::CliError;
pub use report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    BoundViolation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::BoundViolation => 3,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(RunReport, Outcome), CliError> {
    use args::Command;
    match &cli.command {
        Command::Select(a) => commands::select(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::GaussLucas(a) => commands::gauss_lucas(a),
        Command::Verify(a) => verify::run(a),
    }
}

/// Sizes the global worker pool from `SUBFORGE_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SUBFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("SUBFORGE_THREADS={v} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}
