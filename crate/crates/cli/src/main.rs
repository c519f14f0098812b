use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use special_monoid_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let outcome = run(&cli);
    if cli.json {
        println!("{}", serde_json::to_string(&outcome.report).expect("report serializes"));
    } else if outcome.code > 2 {
        eprintln!("{}", outcome.report.text);
    } else {
        println!("{}", outcome.report.text);
    }
    ExitCode::from(outcome.code)
}
