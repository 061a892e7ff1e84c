//! Plain-text `key=value` configuration files supplying flag defaults.
//! Flags always win over file values; unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

/// Every key a configuration file may define.
const KNOWN_KEYS: &[&str] = &[
    "alpha", "rho", "p", "phat", "q", "quad", "plus", "minus", "c", "re-s", "seed", "n-paths",
    "dt", "t-max", "x0", "level", "threads", "z-values", "mellin-s",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "config line {} is not key=value: '{raw}'",
                    lineno + 1
                ));
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(format!("unknown config key '{key}' on line {}", lineno + 1));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Resolves a flag: explicit value wins, then the config file, then the
    /// provided fallback.
    pub fn resolve<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        fallback: Option<T>,
    ) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.get(key) {
            return raw
                .parse::<T>()
                .map_err(|e| format!("config key '{key}' = '{raw}': {e}"));
        }
        fallback.ok_or_else(|| format!("missing required parameter '{key}'"))
    }
}
