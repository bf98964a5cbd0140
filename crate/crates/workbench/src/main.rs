use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cartan_workbench::{exit_code, Config, WorkbenchError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Moving-frame curvature and flow analysis from a JSON config")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a config and write the report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read(path: &Path) -> Result<String, WorkbenchError> {
    std::fs::read_to_string(path)
        .map_err(|e| WorkbenchError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn main_inner(cli: Cli) -> Result<i32, WorkbenchError> {
    match cli.command {
        Command::Validate { config } => {
            Config::from_json(&read(&config)?)?.validate()?;
            println!("config ok");
            Ok(0)
        }
        Command::Run { config, out, format } => {
            let report = cartan_workbench::run_json(&read(&config)?)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| WorkbenchError::Io { path: path.display().to_string(), message: e.to_string() })?,
                None => print!("{text}"),
            }
            Ok(exit_code(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("workbench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
