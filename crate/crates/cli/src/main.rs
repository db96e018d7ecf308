use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dzk_cli::schema::MANIFEST_SCHEMA;
use dzk_cli::{load_manifest, report, run_manifest};

/// Exit status for manifest, I/O and environment errors.
const ERROR_EXIT: u8 = 3;

#[derive(Parser)]
#[command(name = "dzk", version, about = "Dispersion-generalized ZK simulator and estimates lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a manifest, run it and write its artifacts.
    Run { manifest: PathBuf },
    /// Tabulate every results CSV in a directory.
    Report { dir: PathBuf },
    /// Print the manifest JSON schema.
    Schema,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            print!("{MANIFEST_SCHEMA}");
            ExitCode::SUCCESS
        }
        Command::Run { manifest } => {
            let run = load_manifest(&manifest).and_then(|m| run_manifest(&m));
            match run {
                Ok(a) => {
                    print!("{}", a.summary_text);
                    println!("results: {}", a.results.display());
                    ExitCode::from(a.verdict.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(ERROR_EXIT)
                }
            }
        }
        Command::Report { dir } => match report(&dir) {
            Ok(r) => {
                print!("{}", r.text);
                ExitCode::from(r.verdict.exit_code() as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(ERROR_EXIT)
            }
        },
    }
}
