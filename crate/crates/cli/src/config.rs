//! Settings from a TOML file and the environment.
//!
//! Precedence is command-line flag, then environment, then file, then the
//! built-in default.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use quotnef::symprod::{TProvenance, TValue};
use quotnef::Rat;
use serde::Deserialize;

use crate::CliError;

pub const CONFIG_ENV: &str = "QUOTNEF_CONFIG";
pub const ALLOW_ENV: &str = "QUOTNEF_ALLOW_CONJECTURAL_T";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Tikz,
    Svg,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TOverride {
    value: Rat,
    provenance: TProvenance,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    allow_conjectural_t: Option<bool>,
    format: Option<Format>,
    #[serde(default)]
    t_overrides: BTreeMap<String, TOverride>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub allow_conjectural_t: bool,
    pub format: Option<Format>,
    /// Per-genus replacement for the built-in value of `t`.
    pub t_overrides: BTreeMap<u32, TValue>,
}

fn parse_bool(name: &str, s: &str) -> Result<bool, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" | "" => Ok(false),
        other => Err(CliError::Config(format!("{name}: expected a boolean, got {other:?}"))),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let file: FileConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let mut t_overrides = BTreeMap::new();
        for (key, o) in file.t_overrides {
            let g: u32 = key
                .parse()
                .map_err(|_| CliError::Config(format!("t_overrides: genus key {key:?} is not an integer")))?;
            if !o.value.is_positive() {
                return Err(CliError::Config(format!("t_overrides.{g}: t must be positive")));
            }
            t_overrides.insert(
                g,
                TValue {
                    value: o.value,
                    provenance: o.provenance,
                },
            );
        }
        Ok(Config {
            allow_conjectural_t: file.allow_conjectural_t.unwrap_or(false),
            format: file.format,
            t_overrides,
        })
    }

    /// Reads the file named by `path` or `$QUOTNEF_CONFIG`, then applies
    /// `$QUOTNEF_ALLOW_CONJECTURAL_T` and the command-line switch.
    pub fn load(path: Option<&Path>, allow_flag: bool) -> Result<Config, CliError> {
        let env_path = std::env::var_os(CONFIG_ENV);
        let path = path.or(env_path.as_deref().map(Path::new));
        let env_allow = std::env::var(ALLOW_ENV).ok();
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                Config::parse(&text)?
            }
            None => Config::default(),
        };
        cfg.apply_overrides(env_allow.as_deref(), allow_flag)?;
        Ok(cfg)
    }

    fn apply_overrides(&mut self, env_allow: Option<&str>, allow_flag: bool) -> Result<(), CliError> {
        if let Some(v) = env_allow {
            self.allow_conjectural_t = parse_bool(ALLOW_ENV, v)?;
        }
        if allow_flag {
            self.allow_conjectural_t = true;
        }
        Ok(())
    }

    pub fn t_override(&self, g: u32) -> Option<&TValue> {
        self.t_overrides.get(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotnef::rat;

    const SAMPLE: &str = r#"
allow_conjectural_t = true
format = "table"

[t_overrides.5]
value = "9/4"
provenance = "conjectural"
"#;

    #[test]
    fn parses_sample() {
        let c = Config::parse(SAMPLE).unwrap();
        assert!(c.allow_conjectural_t);
        assert_eq!(c.format, Some(Format::Table));
        let t = c.t_override(5).unwrap();
        assert_eq!(t.value, rat(9, 4));
        assert_eq!(t.provenance, TProvenance::Conjectural);
    }

    #[test]
    fn override_needs_provenance() {
        assert!(Config::parse("[t_overrides.5]\nvalue = \"2\"\n").is_err());
        assert!(Config::parse("[t_overrides.x]\nvalue = \"2\"\nprovenance = \"known\"\n").is_err());
        assert!(Config::parse("[t_overrides.5]\nvalue = \"-2\"\nprovenance = \"known\"\n").is_err());
        assert!(Config::parse("colour = 1\n").is_err());
    }

    #[test]
    fn precedence() {
        let mut c = Config::parse(SAMPLE).unwrap();
        c.apply_overrides(Some("0"), false).unwrap();
        assert!(!c.allow_conjectural_t);
        c.apply_overrides(Some("0"), true).unwrap();
        assert!(c.allow_conjectural_t);
        let mut c = Config::default();
        c.apply_overrides(None, false).unwrap();
        assert!(!c.allow_conjectural_t);
        assert!(c.apply_overrides(Some("maybe"), false).is_err());
    }
}
