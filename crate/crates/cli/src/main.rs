use std::process::ExitCode;

use clap::Parser;
use joubert_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    match run(&config) {
        Ok((code, rendered)) => {
            print!("{rendered}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("joubert: {e}");
            ExitCode::from(2)
        }
    }
}
