use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use rsar_cli::config::{DatasetConfig, ExperimentConfig, ReportFormat};
use rsar_cli::experiment::{load_dataset, run_experiment, verify_against_oracle};
use rsar_cli::report::{emit_report, render_verification};

#[derive(Parser)]
#[command(name = "rsar", version, about = "Rough-set attribute reduction workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured experiment and emit a report
    Run {
        /// Path to a TOML experiment config
        config: PathBuf,
        /// Replace every algorithm's base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Report format: table or machine
        #[arg(long)]
        format: Option<ReportFormat>,
        /// Write the report here instead of the configured path or stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every algorithm against the exhaustive minimal reduct
    Verify {
        /// Path to a TOML experiment config
        config: PathBuf,
        /// Replace every algorithm's base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Write the verification report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push one dataset through the pipeline and dump the encoded table
    Encode {
        /// Delimited text file
        dataset: PathBuf,
        /// Default binning: none, equal_width:K or equal_frequency:K
        spec: String,
        #[arg(long, default_value = ",")]
        delimiter: String,
        /// Treat the first row as a header
        #[arg(long)]
        header: bool,
        #[arg(long, default_value = "?")]
        missing_marker: String,
        /// drop_rows or reject
        #[arg(long, default_value = "drop_rows")]
        missing_policy: String,
        /// Decision column index in the file (default: last)
        #[arg(long)]
        decision_column: Option<usize>,
        /// Comma-separated column indices to drop
        #[arg(long, value_delimiter = ',')]
        ignore_columns: Vec<usize>,
        /// Write the dump here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            format,
            out,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(seed) = seed {
                cfg.override_seed(seed);
            }
            let format = match format {
                Some(format) => format,
                None => cfg.output.format()?,
            };
            let rows = run_experiment(&cfg)?;
            let text = emit_report(&rows, format)?;
            write_output(&text, out.as_ref().or(cfg.output.report_path.as_ref()))
        }
        Command::Verify { config, seed, out } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(seed) = seed {
                cfg.override_seed(seed);
            }
            let report = verify_against_oracle(&cfg)?;
            write_output(&render_verification(&report), out.as_ref())
        }
        Command::Encode {
            dataset,
            spec,
            delimiter,
            header,
            missing_marker,
            missing_policy,
            decision_column,
            ignore_columns,
            out,
        } => {
            let name = dataset
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "dataset".into());
            let dcfg = DatasetConfig {
                name,
                path: dataset,
                delimiter,
                has_header: header,
                missing_marker,
                missing_policy,
                decision_column,
                ignore_columns,
                discretization: spec,
                overrides: Default::default(),
            };
            dcfg.validate()?;
            let loaded = load_dataset(&dcfg)?;
            let delimiter = dcfg.delimiter_byte()?;
            let mut buf = Vec::new();
            rsar_core::write_encoded(&loaded.table, &mut buf, delimiter)?;
            write_output(&String::from_utf8(buf)?, out.as_ref())
        }
    }
}
