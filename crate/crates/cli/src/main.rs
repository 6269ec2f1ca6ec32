use std::process::ExitCode;

use clap::Parser;

use quasigroups_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qgcount: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
