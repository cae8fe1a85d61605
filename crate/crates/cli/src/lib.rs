//! Command-line front end for two-terminal quantum graph scattering:
//! spectra sweeps, resonance tables, bound states and ring cascades.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::{Parser, Subcommand};

pub use config::{CommonArgs, Format, RunConfig, Subject, Swept};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qgraph",
    version,
    about = "Electron scattering on two-terminal quantum graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission and reflection over a parameter range
    Sweep(CommonArgs),
    /// Transmission zeros (FTR/STR) of a ring
    Resonances(CommonArgs),
    /// Bound states of a finite-support potential or of parallel wells
    BoundStates(CommonArgs),
    /// k-sweep of a chain of identical rings
    Cascade(CommonArgs),
}

fn with_output<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(|e| CliError::io(p, e))?;
            w.flush().map_err(|e| CliError::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn sweep_and_write(cfg: &RunConfig) -> Result<(), CliError> {
    let report = run::run_sweep(cfg)?;
    with_output(cfg.out.as_deref(), |w| {
        output::write_sweep(w, &report, cfg.format.unwrap_or(Format::Csv))
    })?;
    if !report.skipped.is_empty() {
        match cfg.skip_log.as_deref() {
            Some(p) => with_output(Some(p), |w| output::write_skip_log(w, &report.skipped))?,
            None => {
                let stderr = io::stderr();
                output::write_skip_log(&mut stderr.lock(), &report.skipped)?;
            }
        }
    } else if let Some(p) = cfg.skip_log.as_deref() {
        with_output(Some(p), |w| output::write_skip_log(w, &[]))?;
    }
    if report.rows.is_empty() {
        return Err(CliError::Numeric(format!(
            "all {} points were singular",
            report.skipped.len()
        )));
    }
    Ok(())
}

/// Run one parsed command line.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Sweep(args) => sweep_and_write(&args.resolve()?),
        Command::Cascade(args) => {
            let mut cfg = args.resolve()?;
            if args.subject.is_some_and(|s| s != Subject::Cascade) {
                return Err(CliError::Config(
                    "the cascade command only takes subject cascade".into(),
                ));
            }
            cfg.subject = Subject::Cascade;
            sweep_and_write(&cfg)
        }
        Command::Resonances(args) => {
            let cfg = args.resolve()?;
            let rows = run::run_resonances(&cfg)?;
            let format = cfg.format.unwrap_or(Format::Json);
            with_output(cfg.out.as_deref(), |w| {
                output::write_resonances(w, &rows, format)
            })
        }
        Command::BoundStates(args) => {
            let cfg = args.resolve()?;
            let rows = run::run_bound_states(&cfg)?;
            let format = cfg.format.unwrap_or(Format::Json);
            with_output(cfg.out.as_deref(), |w| {
                output::write_bound_states(w, &rows, format)
            })
        }
    }
}
