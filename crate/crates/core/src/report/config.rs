//! `key = value` run manifests. `#` starts a comment; keys accept `-` or `_`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

pub(crate) const KNOWN_KEYS: &[&str] = &[
    "n",
    "gamma",
    "tol_ode",
    "tol_root",
    "r_max",
    "oracle",
    "format",
    "output",
    "gamma_min",
    "gamma_max",
    "steps",
    "mu",
    "radii",
    "a0",
    "mu_min_exp",
    "mu_max_exp",
    "mu_values",
    "radius",
    "c_used",
    "c_factor",
    "eps",
    "eps_fractions",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "config line {}: expected `key = value`",
                    lineno + 1
                ));
            };
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("config line {}: unknown key '{key}'", lineno + 1));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Typed lookup; `Ok(None)` when the key is absent.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key '{key}': cannot parse '{v}'")),
        }
    }

    /// Comma-separated list lookup.
    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, String> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|item| {
                    item.trim()
                        .parse()
                        .map_err(|_| format!("config key '{key}': cannot parse '{item}'"))
                })
                .collect::<Result<Vec<T>, String>>()
                .map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_hyphens() {
        let cfg =
            ConfigFile::parse("# sweep manifest\nn = 4\ngamma-min = 1.2 # low end\n\nsteps=9\n")
                .unwrap();
        assert_eq!(cfg.get::<u32>("n").unwrap(), Some(4));
        assert_eq!(cfg.get::<f64>("gamma_min").unwrap(), Some(1.2));
        assert_eq!(cfg.get::<usize>("steps").unwrap(), Some(9));
        assert_eq!(cfg.get::<f64>("gamma").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        assert!(ConfigFile::parse("bogus = 1").is_err());
        assert!(ConfigFile::parse("n 3").is_err());
        let cfg = ConfigFile::parse("n = three").unwrap();
        assert!(cfg.get::<u32>("n").is_err());
    }

    #[test]
    fn lists() {
        let cfg = ConfigFile::parse("mu_values = 1, 2,4").unwrap();
        assert_eq!(
            cfg.get_list::<f64>("mu_values").unwrap(),
            Some(vec![1.0, 2.0, 4.0])
        );
    }
}
