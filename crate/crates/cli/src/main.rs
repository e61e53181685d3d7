use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use two_inner_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let out = run(cli)?;
    let mut json = serde_json::to_string_pretty(&out.report).expect("report serializes");
    json.push('\n');
    if let Some(path) = &cli.common.output {
        std::fs::write(path, &json).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let text = if cli.common.json { &json } else { &out.table };
    let _ = lock.write_all(text.as_bytes());
    Ok(out.passed)
}
