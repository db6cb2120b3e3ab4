use casimir_cli::scenario::PrescriptionSpec;
use casimir_cli::{emit, presets, run, verify, Format, Scenario};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Thermal Casimir force between real metals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file.
    Run {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Relative tolerance, overriding the file.
        #[arg(long)]
        tol: Option<f64>,
        /// Zero-frequency prescription, overriding the file.
        #[arg(long, value_parser = ["schwinger", "direct"])]
        prescription: Option<String>,
    },
    /// Print a preset scenario (afm, torsion, hcm).
    Preset { name: String },
    /// Run the built-in consistency checks.
    Verify,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cmd: Command) -> casimir_cli::Result<ExitCode> {
    match cmd {
        Command::Run {
            scenario,
            format,
            out,
            tol,
            prescription,
        } => {
            let mut sc = Scenario::from_path(&scenario)?;
            if let Some(t) = tol {
                sc.tolerance = t;
            }
            match prescription.as_deref() {
                Some("direct") => sc.prescription = PrescriptionSpec::Direct,
                Some("schwinger") => sc.prescription = PrescriptionSpec::Schwinger,
                _ => {}
            }
            let report = run(&sc)?;
            emit::emit(&report, format, out.as_deref())?;
            if report.failed_all() {
                let first = report.records[0].error.clone().unwrap_or_default();
                eprintln!("error: {}", casimir_cli::CliError::AllPointsFailed(first));
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Preset { name } => {
            print!("{}", presets::preset(&name)?.to_toml_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let checks = verify::verify();
            let mut ok = true;
            for c in &checks {
                println!(
                    "[{}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                ok &= c.passed;
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
