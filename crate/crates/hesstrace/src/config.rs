//! Run configuration: field-size cap, auxiliary-prime search floor, thread
//! count, pilot-calibrated tolerances, and output plumbing. Loaded from an
//! optional key = value file named by HESSTRACE_CONFIG, then overridden by
//! command-line flags.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::field::Q_CAP;

pub const CONFIG_ENV: &str = "HESSTRACE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::BadRange(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub q_cap: u64,
    /// Floor for the auxiliary-prime search (0 keeps the minimal choice).
    pub aux_prime_bound: u64,
    pub threads: usize,
    /// Tolerance on |scaled m=2 moment − 1|, also applied to odd moments.
    pub km2: f64,
    /// Tolerance on |scaled m=4 moment − 2|.
    pub km4: f64,
    /// Tolerance on |scaled m=6 moment − 5|.
    pub km6: f64,
    /// Tolerance on the Kolmogorov–Smirnov distance to the semicircle CDF.
    pub ks: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_cap: Q_CAP,
            aux_prime_bound: 0,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            km2: 0.05,
            km4: 0.10,
            km6: 0.25,
            ks: 0.05,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    /// Default config, overlaid with the file named by HESSTRACE_CONFIG
    /// when that variable is set.
    pub fn load() -> Result<RunConfig> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::from_file(&PathBuf::from(path)),
            None => Ok(RunConfig::default()),
        }
    }

    pub fn from_file(path: &PathBuf) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::BadRange(format!("config {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::BadRange(format!(
                    "config line {}: expected key = value, got {line:?}",
                    lineno + 1
                )));
            };
            cfg.apply(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::BadRange(format!("config {key}: bad {what} {value:?}"));
        match key {
            "q_cap" => self.q_cap = value.parse().map_err(|_| bad("integer"))?,
            "aux_prime_bound" => {
                self.aux_prime_bound = value.parse().map_err(|_| bad("integer"))?
            }
            "threads" => self.threads = value.parse().map_err(|_| bad("integer"))?,
            "km2" => self.km2 = value.parse().map_err(|_| bad("number"))?,
            "km4" => self.km4 = value.parse().map_err(|_| bad("number"))?,
            "km6" => self.km6 = value.parse().map_err(|_| bad("number"))?,
            "ks" => self.ks = value.parse().map_err(|_| bad("number"))?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(Error::BadRange(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_cap > Q_CAP {
            return Err(Error::BadRange(format!("q_cap {} exceeds {}", self.q_cap, Q_CAP)));
        }
        if self.threads == 0 {
            return Err(Error::BadRange("threads must be at least 1".into()));
        }
        for (name, v) in [("km2", self.km2), ("km4", self.km4), ("km6", self.km6), ("ks", self.ks)]
        {
            if !(v > 0.0) {
                return Err(Error::BadRange(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.q_cap, Q_CAP);
        assert_eq!(cfg.km2, 0.05);
        assert_eq!(cfg.km4, 0.10);
        assert_eq!(cfg.km6, 0.25);
        assert_eq!(cfg.ks, 0.05);
    }

    #[test]
    fn parses_key_value_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# pilot overrides").unwrap();
        writeln!(f, "km2 = 0.02").unwrap();
        writeln!(f, "threads = 2").unwrap();
        writeln!(f, "format = json").unwrap();
        drop(f);
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.km2, 0.02);
        assert_eq!(cfg.threads, 2);
        assert_eq!(cfg.format, OutputFormat::Json);
        // Untouched keys keep defaults.
        assert_eq!(cfg.km4, 0.10);
    }

    #[test]
    fn rejects_bad_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "km2 = -1\n").unwrap();
        assert!(matches!(RunConfig::from_file(&path), Err(Error::BadRange(_))));
        std::fs::write(&path, "mystery = 4\n").unwrap();
        assert!(matches!(RunConfig::from_file(&path), Err(Error::BadRange(_))));
        std::fs::write(&path, "no equals sign\n").unwrap();
        assert!(matches!(RunConfig::from_file(&path), Err(Error::BadRange(_))));
    }
}
