use std::process::ExitCode;

use clap::Parser;

use counterpoint_cli::report::{render_json, render_text};
use counterpoint_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let out = cli.out.clone();
    match counterpoint_cli::execute(cli) {
        Ok(outcome) => {
            let rendered = if json {
                render_json(&outcome.report)
            } else {
                render_text(&outcome.report)
            };
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{rendered}");
            }
            ExitCode::from(u8::try_from(outcome.exit).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
