//! `key=value` configuration files.
//!
//! Each key names a long flag. Entries are appended to the command line
//! only for flags the command line does not already carry, so flags win.

use std::ffi::OsString;
use std::path::Path;

use crate::CliError;

const SWITCHES: [&str; 3] = ["dinv", "early-exit", "all"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
}

pub fn parse_config(text: &str) -> Result<Vec<ConfigEntry>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::Usage(format!("config line {}: bad key", n + 1)));
        }
        out.push(ConfigEntry {
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(out)
}

/// Path given by `--config PATH` or `--config=PATH`, if any.
pub fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = a.to_str().and_then(|s| s.strip_prefix("--config=")) {
            return Some(rest.into());
        }
    }
    None
}

fn has_flag(argv: &[OsString], key: &str) -> bool {
    let long = format!("--{key}");
    let with_value = format!("--{key}=");
    argv.iter()
        .filter_map(|a| a.to_str())
        .any(|a| a == long || a.starts_with(&with_value))
}

/// Appends config entries whose flags are absent from `argv`.
pub fn merge(argv: &[OsString], entries: &[ConfigEntry]) -> Result<Vec<OsString>, CliError> {
    let mut out = argv.to_vec();
    for e in entries {
        if has_flag(argv, &e.key) {
            continue;
        }
        if SWITCHES.contains(&e.key.as_str()) {
            match e.value.as_str() {
                "true" | "1" | "yes" => out.push(format!("--{}", e.key).into()),
                "false" | "0" | "no" => {}
                other => {
                    return Err(CliError::Usage(format!(
                        "config key {}: expected true or false, got {other:?}",
                        e.key
                    )))
                }
            }
        } else {
            out.push(format!("--{}", e.key).into());
            out.push(e.value.clone().into());
        }
    }
    Ok(out)
}

pub fn load_and_merge(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| {
        CliError::Usage(format!(
            "cannot read config {}: {e}",
            Path::new(&path).display()
        ))
    })?;
    merge(&argv, &parse_config(&text)?)
}
