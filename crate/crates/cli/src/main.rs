use std::process::ExitCode;

use clap::Parser;
use ncg_cli::{render, run, Cli, Command, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let json = match &cli.command {
        Command::Triple(c)
        | Command::VerifyCalculus(c)
        | Command::LeviCivita(c)
        | Command::Curvature(c) => c.json.clone(),
    };
    let (report, code) = match run(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    if let Some(err) = &report.error {
        eprintln!("error: {}", err.message);
    }
    match render(&report, json.as_deref()) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(code as u8)
}
