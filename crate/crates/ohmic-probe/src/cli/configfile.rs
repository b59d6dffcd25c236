//! Key-value config files mirroring the CLI flags.
//!
//! Format: one `key = value` pair per line, `#` starts a full-line comment,
//! blank lines are ignored. Keys are the long flag names without the leading
//! dashes (e.g. `omega-c = 0.5,1`). Values use the same syntax as the
//! corresponding flag. Explicit command-line flags override file entries.

use crate::error::{Error, Result};

pub const KNOWN_KEYS: &[&str] = &[
    "s",
    "omega-c",
    "t",
    "p",
    "n",
    "grid",
    "format",
    "out",
    "seed",
    "figure",
    "probe",
    "m-total",
    "n-trials",
    "at-optimum",
    "rel-tol",
    "abs-tol",
];

/// Parses config text into (key, value) pairs, preserving file order.
pub fn parse_config_str(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {}: expected 'key = value', got '{line}'",
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        if value.is_empty() {
            return Err(Error::Config(format!(
                "line {}: empty value for '{key}'",
                lineno + 1
            )));
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

/// Reads and parses a config file.
pub fn parse_config_file(path: &std::path::Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text)
}
