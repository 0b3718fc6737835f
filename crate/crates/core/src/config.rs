//! Run configuration: defaults, a flat `key = value` file, and overrides.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::{fs, io};

use thiserror::Error;

use crate::bowlership::{ClassifyOptions, IndividualSet, Metric};
use crate::ingest::MatchFormat;
use crate::overmodel::Attribution;
use crate::pairing::{PairingConfig, PairingError};
use crate::stats::{DEFAULT_EXACT_CUTOFF, MAX_EXACT_CUTOFF};

pub const KEYS: [&str; 10] = [
    "corpus_dir",
    "format",
    "t_i",
    "t_p",
    "alpha",
    "exact_cutoff",
    "individual_set",
    "charge_extras",
    "seed",
    "output_dir",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value {value:?} for `{key}`")]
    InvalidValue { key: String, value: String },
    #[error(transparent)]
    Thresholds(#[from] PairingError),
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    Alpha(f64),
    #[error("exact_cutoff {0} exceeds the limit of {max}", max = MAX_EXACT_CUTOFF)]
    ExactCutoff(usize),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// A partial configuration; unset fields fall through to the next layer.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub corpus_dir: Option<PathBuf>,
    pub format: Option<MatchFormat>,
    pub t_i: Option<u32>,
    pub t_p: Option<u32>,
    pub alpha: Option<f64>,
    pub exact_cutoff: Option<usize>,
    pub individual_set: Option<IndividualSet>,
    pub charge_extras: Option<bool>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

fn parsed<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

impl ConfigLayer {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut layer = ConfigLayer::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            layer.set(key.trim(), value.trim())?;
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "corpus_dir" => self.corpus_dir = Some(PathBuf::from(value)),
            "format" => self.format = Some(parsed(key, value)?),
            "t_i" => self.t_i = Some(parsed(key, value)?),
            "t_p" => self.t_p = Some(parsed(key, value)?),
            "alpha" => self.alpha = Some(parsed(key, value)?),
            "exact_cutoff" => self.exact_cutoff = Some(parsed(key, value)?),
            "individual_set" => self.individual_set = Some(parsed(key, value)?),
            "charge_extras" => self.charge_extras = Some(parsed(key, value)?),
            "seed" => self.seed = Some(parsed(key, value)?),
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            corpus_dir: self.corpus_dir.or(lower.corpus_dir),
            format: self.format.or(lower.format),
            t_i: self.t_i.or(lower.t_i),
            t_p: self.t_p.or(lower.t_p),
            alpha: self.alpha.or(lower.alpha),
            exact_cutoff: self.exact_cutoff.or(lower.exact_cutoff),
            individual_set: self.individual_set.or(lower.individual_set),
            charge_extras: self.charge_extras.or(lower.charge_extras),
            seed: self.seed.or(lower.seed),
            output_dir: self.output_dir.or(lower.output_dir),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub corpus_dir: Option<PathBuf>,
    pub format: MatchFormat,
    pub t_i: u32,
    pub t_p: u32,
    pub alpha: f64,
    pub exact_cutoff: usize,
    pub individual_set: IndividualSet,
    pub charge_extras: bool,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(ConfigLayer::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    /// Fills unset fields with defaults and validates. Thresholds default by
    /// format.
    pub fn resolve(layer: ConfigLayer) -> Result<Self, ConfigError> {
        let format = layer.format.unwrap_or(MatchFormat::Odi);
        let thresholds = PairingConfig::for_format(format);
        let cfg = RunConfig {
            corpus_dir: layer.corpus_dir,
            format,
            t_i: layer.t_i.unwrap_or(thresholds.t_i),
            t_p: layer.t_p.unwrap_or(thresholds.t_p),
            alpha: layer.alpha.unwrap_or(0.05),
            exact_cutoff: layer.exact_cutoff.unwrap_or(DEFAULT_EXACT_CUTOFF),
            individual_set: layer.individual_set.unwrap_or_default(),
            charge_extras: layer.charge_extras.unwrap_or(true),
            seed: layer.seed.unwrap_or(0),
            output_dir: layer.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        };
        PairingConfig::new(cfg.t_i, cfg.t_p)?;
        if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
            return Err(ConfigError::Alpha(cfg.alpha));
        }
        if cfg.exact_cutoff > MAX_EXACT_CUTOFF {
            return Err(ConfigError::ExactCutoff(cfg.exact_cutoff));
        }
        Ok(cfg)
    }

    /// Flags over file over defaults.
    pub fn layered(flags: ConfigLayer, file: Option<ConfigLayer>) -> Result<Self, ConfigError> {
        Self::resolve(flags.over(file.unwrap_or_default()))
    }

    pub fn pairing(&self) -> PairingConfig {
        PairingConfig {
            t_i: self.t_i,
            t_p: self.t_p,
        }
    }

    pub fn attribution(&self) -> Attribution {
        Attribution {
            charge_extras: self.charge_extras,
        }
    }

    pub fn classify_options(&self, metric: Metric) -> ClassifyOptions {
        ClassifyOptions {
            metric,
            alpha: self.alpha,
            individual_set: self.individual_set,
            exact_cutoff: self.exact_cutoff,
        }
    }

    /// The analysis parameters as config-file text. Paths are left out so
    /// the text depends only on what affects results.
    pub fn parameters_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format = {}", self.format);
        let _ = writeln!(out, "t_i = {}", self.t_i);
        let _ = writeln!(out, "t_p = {}", self.t_p);
        let _ = writeln!(out, "alpha = {}", self.alpha);
        let _ = writeln!(out, "exact_cutoff = {}", self.exact_cutoff);
        let _ = writeln!(out, "individual_set = {}", self.individual_set.as_str());
        let _ = writeln!(out, "charge_extras = {}", self.charge_extras);
        let _ = writeln!(out, "seed = {}", self.seed);
        out
    }
}
