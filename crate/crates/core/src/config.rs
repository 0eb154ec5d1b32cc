//! JSON configuration files.
//!
//! ```json
//! { "dim": 2, "points": [[1.0, 0.0, 0.0], ...], "meta": { "label": "...", "seed": 7 } }
//! ```
//!
//! Every row must have `dim + 1` entries with norm within `1e-6` of one;
//! rows off by more than `1e-12` are renormalized and a warning is returned.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::constructions::ExactConfiguration;
use crate::geometry::{IntegerVector, SpherePoint, UNIT_NORM_TOL};
use crate::hemisphere::Configuration;

/// Rows further than this from unit length are rejected.
pub const LOAD_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Exact integer rows of a construction; numbers when they fit in 64 bits, decimal strings otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integer_points: Option<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl ConfigFile {
    pub fn from_configuration(c: &Configuration, meta: Option<Meta>) -> Self {
        Self { dim: c.dim(), points: c.points().iter().map(|p| p.coords().to_vec()).collect(), meta }
    }

    pub fn from_exact(c: &ExactConfiguration, seed: Option<u64>) -> Self {
        let integer_points = c.integer_points().iter().map(|v| v.entries().iter().map(integer_value).collect()).collect();
        let meta = Meta {
            label: c.normalized().label().map(str::to_owned),
            seed,
            generator: Some("vandermonde".into()),
            integer_points: Some(integer_points),
        };
        Self::from_configuration(c.normalized(), Some(meta))
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), ConfigError> {
        fs::write(path, self.to_json()).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })
    }

    /// Validates and converts to a configuration, returning any warnings.
    pub fn to_configuration(&self) -> Result<(Configuration, Vec<String>), ConfigError> {
        if self.dim == 0 {
            return Err(ConfigError::Invalid("dim must be at least 1".into()));
        }
        if self.points.is_empty() {
            return Err(ConfigError::Invalid("points must not be empty".into()));
        }
        let mut warnings = Vec::new();
        let mut points = Vec::with_capacity(self.points.len());
        for (i, row) in self.points.iter().enumerate() {
            if row.len() != self.dim + 1 {
                return Err(ConfigError::Invalid(format!("point {i} has {} coordinates, expected {}", row.len(), self.dim + 1)));
            }
            let norm = row.iter().map(|c| c * c).sum::<f64>().sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > LOAD_NORM_TOL {
                return Err(ConfigError::Invalid(format!("point {i} has norm {norm}, not within {LOAD_NORM_TOL} of 1")));
            }
            let point = if (norm - 1.0).abs() > UNIT_NORM_TOL {
                warnings.push(format!("point {i} renormalized (norm {norm})"));
                SpherePoint::normalize(row.clone())
            } else {
                SpherePoint::new(row.clone())
            }
            .map_err(|e| ConfigError::Invalid(format!("point {i}: {e}")))?;
            points.push(point);
        }
        let mut c = Configuration::new(self.dim, points).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if let Some(label) = self.meta.as_ref().and_then(|m| m.label.clone()) {
            c = c.with_label(label);
        }
        Ok((c, warnings))
    }

    /// Exact integer rows from `meta`, if present.
    pub fn integer_points(&self) -> Result<Option<Vec<IntegerVector>>, ConfigError> {
        let Some(rows) = self.meta.as_ref().and_then(|m| m.integer_points.as_ref()) else {
            return Ok(None);
        };
        rows.iter()
            .map(|row| {
                let entries = row.iter().map(parse_integer).collect::<Result<Vec<_>, _>>()?;
                IntegerVector::new(entries).map_err(|e| ConfigError::Invalid(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

fn integer_value(e: &BigInt) -> Value {
    match e.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(e.to_string()),
    }
}

fn parse_integer(v: &Value) -> Result<BigInt, ConfigError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| ConfigError::Invalid(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| ConfigError::Invalid(format!("{s:?} is not an integer"))),
        other => Err(ConfigError::Invalid(format!("{other} is not an integer"))),
    }
}
