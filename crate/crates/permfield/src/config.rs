//! Run configuration: defaults, then `PERMFIELD_MAX_FIELD_SIZE`, then an
//! optional TOML file, then command-line flags.

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context};
use permfield_core::field::DEFAULT_MAX_ORDER;
use serde::Deserialize;

pub const MAX_FIELD_SIZE_ENV: &str = "PERMFIELD_MAX_FIELD_SIZE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Human,
}

impl FromStr for OutputFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            _ => bail!("unknown output format {s:?} (expected json, csv or human)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_field_size: u64,
    pub verify_mode: bool,
    pub output_format: OutputFormat,
    pub workers: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_field_size: DEFAULT_MAX_ORDER,
            verify_mode: false,
            output_format: OutputFormat::Human,
            workers: 1,
            seed: 0,
        }
    }
}

/// Keys accepted in a config file; all optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub max_field_size: Option<u64>,
    pub verify: Option<bool>,
    pub format: Option<OutputFormat>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_field_size: Option<u64>,
    pub verify: bool,
    pub format: Option<OutputFormat>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Layers the sources in increasing priority and validates the result.
    pub fn resolve(env_max: Option<&str>, file: Option<&ConfigFile>, flags: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(v) = env_max {
            cfg.max_field_size =
                v.trim().parse().with_context(|| format!("{MAX_FIELD_SIZE_ENV}={v:?} is not an integer"))?;
        }
        if let Some(f) = file {
            cfg.max_field_size = f.max_field_size.unwrap_or(cfg.max_field_size);
            cfg.verify_mode = f.verify.unwrap_or(cfg.verify_mode);
            cfg.output_format = f.format.unwrap_or(cfg.output_format);
            cfg.workers = f.workers.unwrap_or(cfg.workers);
            cfg.seed = f.seed.unwrap_or(cfg.seed);
        }
        cfg.max_field_size = flags.max_field_size.unwrap_or(cfg.max_field_size);
        cfg.verify_mode |= flags.verify;
        cfg.output_format = flags.format.unwrap_or(cfg.output_format);
        cfg.workers = flags.workers.unwrap_or(cfg.workers);
        cfg.seed = flags.seed.unwrap_or(cfg.seed);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.max_field_size < 4 {
            bail!("max field size must be at least 4, got {}", self.max_field_size);
        }
        if self.workers == 0 {
            bail!("worker count must be at least 1");
        }
        Ok(())
    }
}
