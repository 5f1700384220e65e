//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const KNOWN_KEYS: &[&str] = &[
    "n",
    "p",
    "policy",
    "alpha",
    "mode",
    "dims",
    "points",
    "length",
    "init",
    "value",
    "amplitude",
    "floor",
    "width",
    "t_end",
    "snapshot_every",
    "blowup_threshold",
    "windows",
    "t_final_offset",
    "identity_residual",
    "out_dir",
    "formats",
    "manifest",
    "jobs",
    "p_min",
    "p_max",
    "p_points",
    "pc_margin",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    entries: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message)))
    }

    /// Blank lines and `#` comments are skipped; keys may use `-` or `_`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("line {}: expected `key = value`, found '{raw}'", k + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("line {}: unknown key '{key}'", k + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::usage(format!("line {}: duplicate key '{key}'", k + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        debug_assert!(KNOWN_KEYS.contains(&key), "unregistered key {key}");
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::usage(format!("config key '{key}' = '{v}': {e}"))))
            .transpose()
    }

    /// The flag value when given, else the config value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

pub fn load_optional(path: Option<&Path>) -> CliResult<RunConfig> {
    path.map(RunConfig::load).transpose().map(Option::unwrap_or_default)
}

/// Comma-separated reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(str::trim)
        .map(|s| s.parse::<f64>().map_err(|e| format!("'{s}': {e}")))
        .collect()
}

/// Comma-separated reals, as a clap-compatible value type.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_list(s)?;
        if v.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(v))
    }
}

/// Dimensions as `a..b` (inclusive), `a..=b`, or a comma list.
#[derive(Debug, Clone, PartialEq)]
pub struct DimList(pub Vec<u32>);

impl FromStr for DimList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("'{t}': {e}"));
        let dims = if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            (lo..=hi).collect()
        } else {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        };
        if dims.is_empty() {
            return Err("empty dimension list".into());
        }
        Ok(Self(dims))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = RunConfig::parse("# run\nn = 3\np=2.0  # exponent\n\nout-dir = x\n").unwrap();
        assert_eq!(c.get::<u32>("n").unwrap(), Some(3));
        assert_eq!(c.raw("out_dir"), Some("x"));
        assert_eq!(c.pick(Some(5u32), "n").unwrap(), Some(5));
        assert!(RunConfig::parse("bogus = 1").is_err());
        assert!(RunConfig::parse("n = 3\nn = 4").is_err());
        assert!(RunConfig::parse("n 3").is_err());
        assert!(RunConfig::parse("n = three").unwrap().get::<u32>("n").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!("3..6".parse::<DimList>().unwrap().0, vec![3, 4, 5, 6]);
        assert_eq!("3..=4".parse::<DimList>().unwrap().0, vec![3, 4]);
        assert_eq!("3,5".parse::<DimList>().unwrap().0, vec![3, 5]);
        assert!("6..3".parse::<DimList>().is_err());
        assert_eq!("1, 2,4".parse::<RealList>().unwrap().0, vec![1.0, 2.0, 4.0]);
        assert!("".parse::<RealList>().is_err());
    }
}
