use std::fs;
use std::path::{Path, PathBuf};

use cellfree_core::{ConfigError, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigFormat {
    Toml,
    Json,
}

impl ConfigFormat {
    /// `.json` files are JSON; anything else is read as TOML.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ConfigFormat::Json,
            _ => ConfigFormat::Toml,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse TOML config")]
    Toml(#[from] toml::de::Error),
    #[error("cannot parse JSON config")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

/// Parses and validates a scenario. Missing fields take their defaults.
pub fn parse_config(text: &str, format: ConfigFormat) -> Result<ScenarioConfig, LoadError> {
    let config: ScenarioConfig = match format {
        ConfigFormat::Toml => toml::from_str(text)?,
        ConfigFormat::Json if text.trim().is_empty() => ScenarioConfig::default(),
        ConfigFormat::Json => serde_json::from_str(text)?,
    };
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text, ConfigFormat::from_path(path))
}
