//! Flat `key = value` configuration with command-line overrides.
//!
//! ```text
//! # reference engine
//! omega1 = 0.32
//! omega2 = 1
//! beta1 = 0.5
//! beta2 = 0.05
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Later assignments win
//! and overrides win over the file.

use std::collections::BTreeMap;
use std::fmt;

use crate::dynamics::{OdeConfig, QuadratureConfig};
use crate::engine::{BathPair, CycleConfig, Method, Numerics};

/// Every key accepted in a config file or as a `--key` flag.
pub const CONFIG_KEYS: [&str; 17] = [
    "omega1",
    "omega2",
    "beta1",
    "beta2",
    "tau",
    "method",
    "tau_min",
    "tau_max",
    "n_points",
    "spacing",
    "methods",
    "quad_rel_tol",
    "ode_steps",
    "n_samples",
    "stroke",
    "workers",
    "format",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config key `{}`: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Compression,
    Expansion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// τ grid for sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub tau_min: f64,
    pub tau_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    pub methods: Vec<Method>,
}

impl SweepSpec {
    /// Grid points in ascending order, both endpoints included exactly.
    pub fn taus(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.tau_min;
                }
                if i + 1 == n {
                    return self.tau_max;
                }
                let x = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.tau_min + x * (self.tau_max - self.tau_min),
                    Spacing::Log => self.tau_min * (self.tau_max / self.tau_min).powf(x),
                }
            })
            .collect()
    }
}

/// Parsed, type-checked configuration. Physical parameters and sweep bounds
/// have no defaults; numerics do.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub tau: Option<f64>,
    pub method: Option<Method>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub n_points: Option<usize>,
    pub spacing: Spacing,
    pub methods: Option<Vec<Method>>,
    pub quad_rel_tol: f64,
    pub ode_steps: usize,
    pub n_samples: usize,
    pub stroke: Stroke,
    pub workers: Option<usize>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega1: None,
            omega2: None,
            beta1: None,
            beta2: None,
            tau: None,
            method: None,
            tau_min: None,
            tau_max: None,
            n_points: None,
            spacing: Spacing::Log,
            methods: None,
            quad_rel_tol: QuadratureConfig::default().rel_tol,
            ode_steps: OdeConfig::default().n_steps,
            n_samples: 201,
            stroke: Stroke::Compression,
            workers: None,
            format: OutputFormat::Json,
        }
    }
}

/// Splits a config file into key/value pairs, rejecting unknown keys.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::new(line, format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        check_known(key)?;
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn check_known(key: &str) -> Result<(), ConfigError> {
    if CONFIG_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(ConfigError::new(key, "unknown key"))
    }
}

/// Builds a [`RunConfig`] from optional file contents and overrides, the
/// latter taking precedence.
pub fn parse_config(
    file_text: Option<&str>,
    overrides: &[(String, String)],
) -> Result<RunConfig, ConfigError> {
    let mut merged: BTreeMap<String, String> = BTreeMap::new();
    if let Some(text) = file_text {
        merged.extend(parse_kv(text)?);
    }
    for (k, v) in overrides {
        check_known(k)?;
        merged.insert(k.clone(), v.clone());
    }
    let mut cfg = RunConfig::default();
    for (key, value) in &merged {
        cfg.set(key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn float(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .parse()
        .map_err(|_| ConfigError::new(key, format!("expected a number, got {value:?}")))?;
    if !v.is_finite() {
        return Err(ConfigError::new(key, "must be finite"));
    }
    Ok(v)
}

fn count(key: &str, value: &str) -> Result<usize, ConfigError> {
    value.parse().map_err(|_| {
        ConfigError::new(
            key,
            format!("expected a non-negative integer, got {value:?}"),
        )
    })
}

fn method_list(key: &str, value: &str) -> Result<Vec<Method>, ConfigError> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    let mut methods = Vec::new();
    for part in value.split(',').filter(|p| !p.trim().is_empty()) {
        let m: Method = part.parse().map_err(|e: String| ConfigError::new(key, e))?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(ConfigError::new(key, "at least one method is required"));
    }
    Ok(methods)
}

impl RunConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "omega1" => self.omega1 = Some(float(key, value)?),
            "omega2" => self.omega2 = Some(float(key, value)?),
            "beta1" => self.beta1 = Some(float(key, value)?),
            "beta2" => self.beta2 = Some(float(key, value)?),
            "tau" => self.tau = Some(float(key, value)?),
            "method" => {
                self.method = Some(
                    value
                        .parse()
                        .map_err(|e: String| ConfigError::new(key, e))?,
                )
            }
            "tau_min" => self.tau_min = Some(float(key, value)?),
            "tau_max" => self.tau_max = Some(float(key, value)?),
            "n_points" => self.n_points = Some(count(key, value)?),
            "spacing" => {
                self.spacing = match value.to_ascii_lowercase().as_str() {
                    "linear" => Spacing::Linear,
                    "log" => Spacing::Log,
                    _ => return Err(ConfigError::new(key, "expected `linear` or `log`")),
                }
            }
            "methods" => self.methods = Some(method_list(key, value)?),
            "quad_rel_tol" => self.quad_rel_tol = float(key, value)?,
            "ode_steps" => self.ode_steps = count(key, value)?,
            "n_samples" => self.n_samples = count(key, value)?,
            "stroke" => {
                self.stroke = match value.to_ascii_lowercase().as_str() {
                    "compression" => Stroke::Compression,
                    "expansion" => Stroke::Expansion,
                    _ => {
                        return Err(ConfigError::new(
                            key,
                            "expected `compression` or `expansion`",
                        ))
                    }
                }
            }
            "workers" => self.workers = Some(count(key, value)?),
            "format" => {
                self.format = match value.to_ascii_lowercase().as_str() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(ConfigError::new(key, "expected `json` or `csv`")),
                }
            }
            _ => return Err(ConfigError::new(key, "unknown key")),
        }
        Ok(())
    }

    /// Domain checks on every value that is present.
    fn validate(&self) -> Result<(), ConfigError> {
        let positive = |key: &str, v: Option<f64>| match v {
            Some(x) if x <= 0.0 => Err(ConfigError::new(key, format!("must be > 0, got {x}"))),
            _ => Ok(()),
        };
        positive("omega1", self.omega1)?;
        positive("omega2", self.omega2)?;
        positive("beta1", self.beta1)?;
        positive("beta2", self.beta2)?;
        positive("tau", self.tau)?;
        positive("tau_min", self.tau_min)?;
        if let (Some(w1), Some(w2)) = (self.omega1, self.omega2) {
            if w2 <= w1 {
                return Err(ConfigError::new(
                    "omega2",
                    format!("must exceed omega1 (omega2 > omega1 > 0), got {w2} <= {w1}"),
                ));
            }
        }
        if let (Some(b1), Some(b2)) = (self.beta1, self.beta2) {
            if b1 <= b2 {
                return Err(ConfigError::new(
                    "beta1",
                    format!("cold bath must be colder (β₁ > β₂), got beta1 = {b1} <= beta2 = {b2}"),
                ));
            }
        }
        if let (Some(lo), Some(hi)) = (self.tau_min, self.tau_max) {
            if hi <= lo {
                return Err(ConfigError::new(
                    "tau_max",
                    format!("must exceed tau_min, got {hi} <= {lo}"),
                ));
            }
        }
        if let Some(n) = self.n_points {
            if n < 2 {
                return Err(ConfigError::new(
                    "n_points",
                    format!("must be >= 2, got {n}"),
                ));
            }
        }
        if self.quad_rel_tol <= 0.0 {
            return Err(ConfigError::new("quad_rel_tol", "must be > 0"));
        }
        if self.ode_steps < OdeConfig::MIN_STEPS {
            return Err(ConfigError::new(
                "ode_steps",
                format!(
                    "must be >= {}, got {}",
                    OdeConfig::MIN_STEPS,
                    self.ode_steps
                ),
            ));
        }
        if self.n_samples < 2 {
            return Err(ConfigError::new("n_samples", "must be >= 2"));
        }
        if self.workers == Some(0) {
            return Err(ConfigError::new("workers", "must be >= 1"));
        }
        Ok(())
    }

    pub fn numerics(&self) -> Numerics {
        Numerics {
            quad: QuadratureConfig {
                rel_tol: self.quad_rel_tol,
                ..QuadratureConfig::default()
            },
            ode: OdeConfig {
                n_steps: self.ode_steps,
                ..OdeConfig::default()
            },
        }
    }

    fn require<T: Copy>(key: &str, v: Option<T>) -> Result<T, ConfigError> {
        v.ok_or_else(|| ConfigError::new(key, "missing required value"))
    }

    /// Cycle configuration with an explicit τ and method.
    pub fn cycle_config(&self) -> Result<CycleConfig, ConfigError> {
        let base = self.base_cycle()?;
        Ok(CycleConfig {
            tau: Self::require("tau", self.tau)?,
            method: Self::require("method", self.method)?,
            ..base
        })
    }

    /// Cycle configuration from the physical parameters alone; τ and method
    /// are placeholders meant to be replaced per sweep point.
    pub fn base_cycle(&self) -> Result<CycleConfig, ConfigError> {
        let omega1 = Self::require("omega1", self.omega1)?;
        let omega2 = Self::require("omega2", self.omega2)?;
        let beta1 = Self::require("beta1", self.beta1)?;
        let beta2 = Self::require("beta2", self.beta2)?;
        Ok(CycleConfig {
            omega1,
            omega2,
            baths: BathPair {
                beta_cold: beta1,
                beta_hot: beta2,
            },
            tau: self.tau.unwrap_or(1.0),
            method: self.method.unwrap_or(Method::Adiabatic),
            numerics: self.numerics(),
        })
    }

    pub fn sweep_spec(&self, default_methods: &[Method]) -> Result<SweepSpec, ConfigError> {
        Ok(SweepSpec {
            tau_min: Self::require("tau_min", self.tau_min)?,
            tau_max: Self::require("tau_max", self.tau_max)?,
            n_points: Self::require("n_points", self.n_points)?,
            spacing: self.spacing,
            methods: self
                .methods
                .clone()
                .unwrap_or_else(|| default_methods.to_vec()),
        })
    }
}

/// Extracts config overrides from a `cycle` JSON record, so that a printed
/// result can be fed back in as input.
pub fn overrides_from_json(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ConfigError::new("<json>", e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| ConfigError::new("<json>", "expected a JSON object"))?;
    let mut out = Vec::new();
    for key in CONFIG_KEYS {
        match obj.get(key) {
            Some(serde_json::Value::Number(n)) => out.push((key.to_string(), n.to_string())),
            Some(serde_json::Value::String(s)) => out.push((key.to_string(), s.clone())),
            _ => {}
        }
    }
    Ok(out)
}
