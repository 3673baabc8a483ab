use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    match apery_cli::run(apery_cli::Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("apery: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
