use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use zlab::commands::{error_record, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let (Some(path), Some(record)) = (&cli.record, &outcome.record) {
                let line = serde_json::to_string(record).expect("records serialize");
                let appended = std::fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .and_then(|mut f| writeln!(f, "{line}"));
                if let Err(e) = appended {
                    eprintln!("{}", error_record(&anyhow::Error::new(e).context("writing run record")));
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("{}", error_record(&e));
            ExitCode::from(1)
        }
    }
}
