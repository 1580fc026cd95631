use std::process::ExitCode;

use clap::Parser;
use ghseg_cli::{execute, Cli};

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    ExitCode::from(execute(&cli, &echo))
}
