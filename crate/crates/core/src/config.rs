//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are the long
//! flag names of the command they configure; a key may appear only once.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    /// Entries in file order.
    pub entries: Vec<(String, String)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", i + 1)));
            }
            if entries.iter().any(|(k, _)| k == key) {
                return Err(Error::Config(format!("line {}: duplicate key '{key}'", i + 1)));
            }
            entries.push((key.to_string(), value.to_string()));
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Removes and returns `key`.
    pub fn take(&mut self, key: &str) -> Option<String> {
        let pos = self.entries.iter().position(|(k, _)| k == key)?;
        Some(self.entries.remove(pos).1)
    }

    /// Rejects any key not in `allowed`.
    pub fn check_keys(&self, allowed: &[String]) -> Result<()> {
        match self.entries.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(Error::Config(format!("unknown config key '{k}'"))),
            None => Ok(()),
        }
    }
}

/// Parses `true`/`false` style booleans.
pub fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("key '{key}': expected a boolean, got '{value}'"))),
    }
}
