//! Flat `key = value` config files with `#` comments.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use kinopin::{Error, Result};

pub const KNOWN_KEYS: &[&str] = &[
    "mu",
    "mu_minus",
    "mu_plus",
    "scheme",
    "n_agents",
    "t_end",
    "seed",
    "replicas",
    "grid_size",
    "dt",
    "depth",
    "samples",
    "out_dir",
    "format",
    "experiment",
    "init",
    "record_every",
    "threads",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected `key = value`", lineno + 1)))?;
            let key = k.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!("config line {}: unknown key `{}`", lineno + 1, k.trim())));
            }
            let val = v.trim().trim_matches('"').to_string();
            if values.insert(key.clone(), val).is_some() {
                return Err(Error::Config(format!("config line {}: duplicate key `{key}`", lineno + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::Config(format!("config key `{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dashes() {
        let c = ConfigFile::parse("# header\nmu-minus = 0.4  # trailing\n\nn_agents=100\nout_dir = \"runs\"\n").unwrap();
        assert_eq!(c.get::<f64>("mu_minus").unwrap(), Some(0.4));
        assert_eq!(c.get::<usize>("n_agents").unwrap(), Some(100));
        assert_eq!(c.raw("out_dir"), Some("runs"));
        assert_eq!(c.get::<f64>("dt").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed() {
        assert!(ConfigFile::parse("colour = red").unwrap_err().to_string().contains("unknown key"));
        assert!(ConfigFile::parse("seed = 1\nseed = 2").unwrap_err().to_string().contains("duplicate"));
        assert!(ConfigFile::parse("seed 1").is_err());
        let c = ConfigFile::parse("seed = x").unwrap();
        assert!(c.get::<u64>("seed").is_err());
    }
}
