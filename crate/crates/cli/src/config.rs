use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;
use tauber_core::tauberian::TauberParams;

use crate::output::Format;
use crate::Coded;

/// Values read from a `--config` TOML file. Flags override every field.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub n: Option<u64>,
    pub x: Option<u64>,
    pub x_min: Option<u64>,
    pub x_max: Option<u64>,
    pub sigma: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub z: Option<f64>,
    pub d: Option<u64>,
    pub trunc: Option<usize>,
    pub wild: Option<PathBuf>,
    pub params: Option<TauberParams>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load(path: Option<&Path>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => toml::from_str(&read(p)?)
            .map_err(|e| Coded::new("config", format!("{}: {}", p.display(), e.message())).into()),
    }
}

/// A flat key-value block of Tauberian parameters.
pub fn load_params(path: &Path) -> Result<TauberParams> {
    toml::from_str(&read(path)?)
        .map_err(|e| Coded::new("config", format!("{}: {}", path.display(), e.message())).into())
}

/// Reads a wild-factor table file.
pub fn load_wild(path: &Path) -> Result<tauber_core::series::WildTable> {
    Ok(tauber_core::series::WildTable::parse(&read(path)?)?)
}

/// `flag`, else `config`, else `default`.
pub fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

/// `flag`, else `config`, else a usage error naming the missing key.
pub fn require<T>(flag: Option<T>, config: Option<T>, name: &str) -> Result<T> {
    flag.or(config)
        .ok_or_else(|| Coded::new("usage", format!("missing required value --{name}")).into())
}
