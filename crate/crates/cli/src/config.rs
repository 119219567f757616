//! Tolerances and budgets, read from `key = value` lines.

use std::path::Path;

use serde::{Deserialize, Serialize};

use finitude::fuchsian::{DEFAULT_TOL as FUCHSIAN_TOL, DEFAULT_TRIANGULAR_TOL};
use finitude::monodromy::{DEFAULT_TOL as CONTINUATION_TOL, MATCHING_MARGIN};
use finitude::perm::group::MAX_DEGREE;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Enclosure tolerance for singular points.
    pub continuation_tol: f64,
    /// End matching accepts distances below this fraction of the minimal root separation.
    pub matching_margin: f64,
    /// Largest degree in y handed to the group algorithms.
    pub group_degree_cap: usize,
    /// Degree bound of the witness search; absent means automatic.
    pub witness_degree_bound: Option<usize>,
    /// Local error tolerance of the Fuchsian integrator.
    pub fuchsian_tol: f64,
    /// Relative tolerance of the triangularization test.
    pub triangular_tol: f64,
    /// Default truncation order of Puiseux expansions.
    pub puiseux_order: String,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            continuation_tol: CONTINUATION_TOL,
            matching_margin: MATCHING_MARGIN,
            group_degree_cap: MAX_DEGREE,
            witness_degree_bound: None,
            fuchsian_tol: FUCHSIAN_TOL,
            triangular_tol: DEFAULT_TRIANGULAR_TOL,
            puiseux_order: "3".to_string(),
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let c: Config = toml::from_str(text).map_err(|e| e.to_string())?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn validate(&self) -> Result<(), String> {
        let positive = [
            ("continuation_tol", self.continuation_tol),
            ("matching_margin", self.matching_margin),
            ("fuchsian_tol", self.fuchsian_tol),
            ("triangular_tol", self.triangular_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be a positive number"));
            }
        }
        if self.matching_margin >= 0.5 {
            return Err("matching_margin must be below 1/2".into());
        }
        if self.group_degree_cap == 0 || self.group_degree_cap > MAX_DEGREE {
            return Err(format!("group_degree_cap must lie in 1..={MAX_DEGREE}"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if self.witness_degree_bound.is_none() {
            v["witness_degree_bound"] = serde_json::Value::String("auto".into());
        }
        v
    }
}
