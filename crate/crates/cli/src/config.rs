//! Command-line flags, the key=value config file, and their merge into a
//! validated [`RunConfig`]. Flags win over file entries.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use qgraph::TabulatedPotential;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    Ring,
    #[value(alias = "ab_ring")]
    AbRing,
    #[value(alias = "parallel_wells")]
    ParallelWells,
    Cascade,
    #[value(alias = "finite_support")]
    FiniteSupport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Swept {
    K,
    L2,
    Alpha,
    #[value(alias = "n_wells")]
    NWells,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand. Every value may also come from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// key=value file with defaults for any flag below (`#` starts a comment)
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub subject: Option<Subject>,
    /// Swept variable (default k)
    #[arg(long, value_enum)]
    pub swept: Option<Swept>,
    /// First arm length, nm
    #[arg(long)]
    pub l1: Option<f64>,
    /// Second arm length, nm
    #[arg(long)]
    pub l2: Option<f64>,
    /// Flux parameter α = Φ/(Φ₀L), nm⁻¹
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Well depth (negative) or barrier height, eV
    #[arg(long, allow_hyphen_values = true)]
    pub depth_ev: Option<f64>,
    #[arg(long)]
    pub width_nm: Option<f64>,
    #[arg(long)]
    pub n_wells: Option<usize>,
    /// Number of identical rings in a cascade
    #[arg(long)]
    pub n_rings: Option<usize>,
    /// Fixed wave number when another variable is swept, nm⁻¹
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub k_min: Option<f64>,
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Start of the range when the swept variable is not k
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// End of the range when the swept variable is not k
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub kappa_min: Option<f64>,
    #[arg(long)]
    pub kappa_max: Option<f64>,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File listing skipped singular points (default: standard error)
    #[arg(long)]
    pub skip_log: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Two-column (x nm, V eV) file with a tabulated potential
    #[arg(long)]
    pub potential_file: Option<PathBuf>,
    /// Comma-separated lead lengths between cascade elements, nm
    #[arg(long, allow_hyphen_values = true)]
    pub links: Option<String>,
}

/// Fully resolved and validated run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subject: Subject,
    pub swept: Swept,
    pub l1: f64,
    pub l2: f64,
    pub alpha: f64,
    pub depth_ev: f64,
    pub width_nm: f64,
    pub n_wells: usize,
    pub n_rings: usize,
    pub k: f64,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub kappa_range: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
    pub skip_log: Option<PathBuf>,
    /// Output format; sweeps default to CSV, tables to JSON.
    pub format: Option<Format>,
    pub potential: Option<TabulatedPotential>,
    pub links: Vec<f64>,
}

/// Parse a key=value file; keys accept `-` or `_`.
pub fn parse_config_text(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "config line {}: expected key=value, got `{line}`",
                i + 1
            ))
        })?;
        let key = key.trim().replace('-', "_");
        let value = value.trim().trim_matches('"').to_string();
        map.insert(key, value);
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text)
}

struct Merged<'a> {
    file: &'a HashMap<String, String>,
}

impl Merged<'_> {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config(format!("config key `{key}`: cannot parse `{v}`"))),
        }
    }

    fn get_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => T::from_str(&v.replace('_', "-"), true)
                .map(Some)
                .map_err(|_| CliError::Config(format!("config key `{key}`: unknown value `{v}`"))),
        }
    }
}

/// Comma-separated non-negative lengths.
pub fn parse_links(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<f64>() {
            Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
            _ => Err(CliError::Config(format!("bad link length `{s}`"))),
        })
        .collect()
}

impl CommonArgs {
    /// Merge with the config file (if any) and validate.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => read_config(p)?,
            None => HashMap::new(),
        };
        if let Some(bad) = file.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(CliError::Config(format!("unknown config key `{bad}`")));
        }
        let m = Merged { file: &file };

        let subject = m
            .get_enum(self.subject, "subject")?
            .unwrap_or(Subject::Ring);
        let swept = m.get_enum(self.swept, "swept")?.unwrap_or(Swept::K);
        let l1 = m.get(self.l1, "l1")?;
        let l2 = m.get(self.l2, "l2")?;
        let alpha = m.get(self.alpha, "alpha")?;
        let n_wells = m.get(self.n_wells, "n_wells")?;
        let k = m.get(self.k, "k")?;

        let fixed_twice = match swept {
            Swept::K => k.is_some(),
            Swept::L2 => l2.is_some(),
            Swept::Alpha => alpha.is_some(),
            Swept::NWells => n_wells.is_some(),
        };
        if fixed_twice {
            return Err(CliError::Config(format!(
                "{swept:?} is swept and cannot also be given a fixed value"
            )));
        }
        let allowed = match subject {
            Subject::Ring => matches!(swept, Swept::K | Swept::L2),
            Subject::AbRing | Subject::Cascade => {
                matches!(swept, Swept::K | Swept::L2 | Swept::Alpha)
            }
            Subject::ParallelWells => matches!(swept, Swept::K | Swept::NWells),
            Subject::FiniteSupport => swept == Swept::K,
        };
        if !allowed {
            return Err(CliError::Config(format!(
                "cannot sweep {swept:?} for subject {subject:?}"
            )));
        }
        if subject == Subject::Ring && alpha.is_some_and(|a| a != 0.0) {
            return Err(CliError::Config(
                "subject ring has no flux; use ab-ring".into(),
            ));
        }

        let (start, stop) = if swept == Swept::K {
            (
                m.get(self.k_min, "k_min")?.unwrap_or(0.1),
                m.get(self.k_max, "k_max")?.unwrap_or(10.0),
            )
        } else {
            let from = m.get(self.from, "from")?;
            let to = m.get(self.to, "to")?;
            match (from, to) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(CliError::Config(format!(
                        "sweeping {swept:?} needs --from and --to"
                    )))
                }
            }
        };
        let points = m.get(self.points, "points")?.unwrap_or(1000);

        let kappa_min = m.get(self.kappa_min, "kappa_min")?;
        let kappa_max = m.get(self.kappa_max, "kappa_max")?;
        let kappa_range = match (kappa_min, kappa_max) {
            (None, None) => None,
            (lo, hi) => Some((lo.unwrap_or(0.0), hi.unwrap_or(f64::INFINITY))),
        };

        let potential = match m.get::<PathBuf>(self.potential_file.clone(), "potential_file")? {
            Some(p) => {
                let text = fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
                Some(
                    TabulatedPotential::parse(&text)
                        .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                )
            }
            None => None,
        };
        let links = match m.get::<String>(self.links.clone(), "links")? {
            Some(s) => parse_links(&s)?,
            None => Vec::new(),
        };

        let cfg = RunConfig {
            subject,
            swept,
            l1: l1.unwrap_or(1.0),
            l2: l2.unwrap_or(2.1),
            alpha: alpha.unwrap_or(0.0),
            depth_ev: m.get(self.depth_ev, "depth_ev")?.unwrap_or(-0.5),
            width_nm: m.get(self.width_nm, "width_nm")?.unwrap_or(1.0),
            n_wells: n_wells.unwrap_or(1),
            n_rings: m.get(self.n_rings, "n_rings")?.unwrap_or(2),
            k: k.unwrap_or(1.0),
            start,
            stop,
            points,
            kappa_range,
            out: m.get(self.out.clone(), "out")?,
            skip_log: m.get(self.skip_log.clone(), "skip_log")?,
            format: m.get_enum(self.format, "format")?,
            potential,
            links,
        };
        cfg.check_values()?;
        Ok(cfg)
    }
}

const KNOWN_KEYS: &[&str] = &[
    "subject",
    "swept",
    "l1",
    "l2",
    "alpha",
    "depth_ev",
    "width_nm",
    "n_wells",
    "n_rings",
    "k",
    "k_min",
    "k_max",
    "from",
    "to",
    "points",
    "kappa_min",
    "kappa_max",
    "out",
    "skip_log",
    "format",
    "potential_file",
    "links",
];

impl RunConfig {
    fn check_values(&self) -> Result<(), CliError> {
        let positive = [
            ("l1", self.l1),
            ("l2", self.l2),
            ("width_nm", self.width_nm),
            ("k", self.k),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !self.alpha.is_finite() || !self.depth_ev.is_finite() {
            return Err(CliError::Config("alpha and depth_ev must be finite".into()));
        }
        if self.n_wells == 0 || self.n_rings == 0 {
            return Err(CliError::Config(
                "n_wells and n_rings must be at least 1".into(),
            ));
        }
        if self.links.len() > self.n_rings - 1 {
            return Err(CliError::Config(format!(
                "{} links given for {} rings",
                self.links.len(),
                self.n_rings
            )));
        }
        Ok(())
    }

    /// Validate the sweep range: at least two points, start < stop.
    pub fn check_range(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err(CliError::Config(format!(
                "range must satisfy start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.swept != Swept::NWells && self.points < 2 {
            return Err(CliError::Config(format!(
                "points must be at least 2, got {}",
                self.points
            )));
        }
        Ok(())
    }
}
