//! Run configuration: an optional TOML file overridden by command-line flags.

use std::path::{Path, PathBuf};

use ghseg_core::geodesic::default_sample_grid;
use ghseg_core::rational::{int, parse_rational, Rational};
use ghseg_core::SolverConfig;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub solver: SolverConfig,
    /// Interpolation parameters for `geodesic`, as `p/q` strings.
    pub sample_grid: Vec<String>,
    /// Refuse simplex edges at or above twice the isolation radius.
    pub strict: bool,
    pub delta: Option<String>,
    pub mu: Option<String>,
    pub ms: Option<Vec<usize>>,
    /// Report destination; stdout when unset.
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            solver: SolverConfig::default(),
            sample_grid: default_sample_grid().iter().map(ghseg_core::rational::format_rational).collect(),
            strict: true,
            delta: None,
            mu: None,
            ms: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let s = &self.solver;
        if s.enumeration_cap == 0 || s.max_points == 0 || s.node_budget == Some(0) {
            return Err(CliError::Config("solver limits must be positive".into()));
        }
        self.grid()?;
        if let Some(ms) = &self.ms {
            if ms.is_empty() || ms.contains(&0) {
                return Err(CliError::Config("ms must be a non-empty list of positive integers".into()));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Vec<Rational>, CliError> {
        parse_grid(&self.sample_grid)
    }
}

pub fn parse_grid<S: AsRef<str>>(items: &[S]) -> Result<Vec<Rational>, CliError> {
    if items.is_empty() {
        return Err(CliError::Config("sample grid is empty".into()));
    }
    items
        .iter()
        .map(|s| {
            let t = parse_rational(s.as_ref()).map_err(|e| CliError::Config(e.to_string()))?;
            if t < int(0) || t > int(1) {
                return Err(CliError::Config(format!("sample {} is outside [0,1]", s.as_ref())));
            }
            Ok(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        c.validate().unwrap();
        assert_eq!(c.grid().unwrap().len(), 5);
        assert!(c.strict);
    }

    #[test]
    fn parses_toml_and_rejects_bad_values() {
        let c: RunConfig = toml::from_str(
            r#"
            sample_grid = ["0", "1/3", "1"]
            strict = false
            ms = [2, 3]
            [solver]
            max_points = 8
            "#,
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.solver.max_points, 8);
        assert_eq!(c.solver.enumeration_cap, 20);
        assert!(!c.strict);

        let bad: RunConfig = toml::from_str(r#"sample_grid = ["3/2"]"#).unwrap();
        assert!(bad.validate().is_err());
        let bad: RunConfig = toml::from_str("[solver]\nmax_points = 0").unwrap();
        assert!(bad.validate().is_err());
        assert!(toml::from_str::<RunConfig>("unknown = 1").is_err());
    }
}
