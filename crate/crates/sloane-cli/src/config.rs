//! Layered run configuration: command-line flags override config-file
//! values, which override built-in defaults.
//!
//! The config file is plain `key = value` text; blank lines and `#`
//! comments are ignored. Recognized keys: `max_steps`, `max_bits`,
//! `growth_window`, `jobs`, `format`, `eps`. The `SLOANE_CONFIG`
//! environment variable names the default config path when `--config`
//! is not given.

use std::fmt;
use std::fs;
use std::path::Path;

use sloane_core::{Epsilon, OrbitBudget};

use crate::numparse::parse_eps;
use crate::seqio::OutputFormat;

pub const CONFIG_ENV_VAR: &str = "SLOANE_CONFIG";

#[derive(Debug, Clone, Copy)]
pub struct CliConfig {
    pub max_steps: u64,
    pub max_bits: u64,
    pub growth_window: usize,
    pub jobs: usize,
    pub format: OutputFormat,
    pub eps: (u64, u64),
}

impl Default for CliConfig {
    fn default() -> Self {
        let budget = OrbitBudget::default();
        CliConfig {
            max_steps: budget.max_steps(),
            max_bits: budget.max_bits(),
            growth_window: budget.growth_window(),
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            format: OutputFormat::Csv,
            eps: (1, 6),
        }
    }
}

impl CliConfig {
    pub fn budget(&self) -> OrbitBudget {
        OrbitBudget::new(self.max_steps, self.max_bits, self.growth_window)
            .expect("validated config")
    }

    pub fn epsilon(&self) -> Epsilon {
        Epsilon::new(self.eps.0, self.eps.1).expect("validated config")
    }
}

impl fmt::Display for CliConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_steps = {}\nmax_bits = {}\ngrowth_window = {}\njobs = {}\nformat = {}\neps = {}/{}",
            self.max_steps,
            self.max_bits,
            self.growth_window,
            self.jobs,
            self.format.name(),
            self.eps.0,
            self.eps.1,
        )
    }
}

/// Applies `key = value` lines from `path` on top of `config`.
pub fn apply_config_file(config: &mut CliConfig, path: &Path) -> Result<(), String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{}:{}: expected `key = value`", path.display(), lineno + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        let parse_u64 = |v: &str| v.parse::<u64>().map_err(|e| format!("{key}: {e}"));
        match key {
            "max_steps" => config.max_steps = parse_u64(value)?,
            "max_bits" => config.max_bits = parse_u64(value)?,
            "growth_window" => config.growth_window = parse_u64(value)? as usize,
            "jobs" => config.jobs = parse_u64(value)?.max(1) as usize,
            "format" => {
                config.format = OutputFormat::parse(value)
                    .ok_or_else(|| format!("format must be csv or jsonl, got {value}"))?
            }
            "eps" => config.eps = parse_eps(value)?,
            other => {
                return Err(format!("{}:{}: unknown key {other}", path.display(), lineno + 1))
            }
        }
    }
    if config.max_steps == 0 || config.max_bits == 0 || config.growth_window == 0 {
        return Err("budget fields must be at least 1".to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_overrides_defaults() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# comment\nmax_steps = 50\n\neps = 1/10\nformat = jsonl").unwrap();
        let mut config = CliConfig::default();
        apply_config_file(&mut config, f.path()).unwrap();
        assert_eq!(config.max_steps, 50);
        assert_eq!(config.eps, (1, 10));
        assert_eq!(config.format, OutputFormat::JsonLines);
        // untouched keys keep defaults
        assert_eq!(config.growth_window, 8);
    }

    #[test]
    fn bad_keys_are_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "nonsense = 5").unwrap();
        let mut config = CliConfig::default();
        assert!(apply_config_file(&mut config, f.path()).is_err());
    }
}
