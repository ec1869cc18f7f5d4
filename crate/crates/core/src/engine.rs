//! The Otto cycle: stroke works, hot-isochore heat, efficiencies and power.
//!
//! Thermalization is taken as instantaneous, so a cycle with two strokes of
//! duration τ lasts 2τ.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dynamics::{ie_min_duration, qstar_na, DynamicsError, OdeConfig, QuadratureConfig};
use crate::protocol::{make_quintic_ramp, reverse_ramp, ProtocolError};
use crate::sta::{check_method_validity, time_avg_cost, StaError, StaMethod};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid cycle configuration: {0}")]
    InvalidConfig(String),
    #[error("not an engine: work {work} must be negative and heat {heat} positive")]
    NotAnEngine { work: f64, heat: f64 },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Numerics(#[from] DynamicsError),
    #[error(transparent)]
    Sta(#[from] StaError),
}

/// How the compression and expansion strokes are driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Ideal adiabatic strokes: Q* = 1 at no cost.
    Adiabatic,
    /// Plain finite-time ramp without shortcut.
    Nonadiabatic,
    Sta(StaMethod),
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Adiabatic,
        Method::Nonadiabatic,
        Method::Sta(StaMethod::Cd),
        Method::Sta(StaMethod::Lcd),
        Method::Sta(StaMethod::Ie),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Adiabatic => "AD",
            Method::Nonadiabatic => "NA",
            Method::Sta(m) => m.name(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown method {s:?} (expected AD, NA, CD, LCD or IE)"))
    }
}

/// Inverse temperatures of the cold (β₁) and hot (β₂) reservoirs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathPair {
    pub beta_cold: f64,
    pub beta_hot: f64,
}

impl BathPair {
    pub fn new(beta_cold: f64, beta_hot: f64) -> Result<Self, EngineError> {
        let baths = Self {
            beta_cold,
            beta_hot,
        };
        baths.validate()?;
        Ok(baths)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if !(self.beta_hot > 0.0 && self.beta_hot.is_finite()) {
            return Err(EngineError::InvalidConfig(format!(
                "beta2 must be positive, got {}",
                self.beta_hot
            )));
        }
        if !(self.beta_cold > self.beta_hot && self.beta_cold.is_finite()) {
            return Err(EngineError::InvalidConfig(format!(
                "beta1 must exceed beta2 (cold bath colder), got beta1 = {}, beta2 = {}",
                self.beta_cold, self.beta_hot
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Numerics {
    pub quad: QuadratureConfig,
    pub ode: OdeConfig,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    pub omega1: f64,
    pub omega2: f64,
    pub baths: BathPair,
    /// Duration of each of the two strokes.
    pub tau: f64,
    pub method: Method,
    pub numerics: Numerics,
}

impl CycleConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if !(self.omega1 > 0.0 && self.omega1.is_finite()) {
            return Err(EngineError::InvalidConfig(format!(
                "omega1 must be positive, got {}",
                self.omega1
            )));
        }
        if !(self.omega2 > self.omega1 && self.omega2.is_finite()) {
            return Err(EngineError::InvalidConfig(format!(
                "omega2 must exceed omega1, got omega1 = {}, omega2 = {}",
                self.omega1, self.omega2
            )));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(EngineError::InvalidConfig(format!(
                "tau must be positive, got {}",
                self.tau
            )));
        }
        self.baths.validate()?;
        self.numerics.quad.validate()?;
        self.numerics.ode.validate()?;
        Ok(())
    }

    pub fn cycle_time(&self) -> f64 {
        2.0 * self.tau
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    pub fn with_tau(self, tau: f64) -> Self {
        Self { tau, ..self }
    }
}

/// Outcome of one cycle.
///
/// Values that are undefined for the configuration (costs of an inapplicable
/// shortcut, the efficiency of a non-engine) are `None`, never NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct EnginePerformance {
    pub tau: f64,
    pub method: Method,
    pub qstar1: f64,
    pub qstar3: f64,
    pub w1: f64,
    pub w3: f64,
    pub q2: f64,
    pub cost1: Option<f64>,
    pub cost3: Option<f64>,
    pub eta: Option<f64>,
    pub power: Option<f64>,
    /// w1 + w3 < 0 and q2 > 0.
    pub engine_valid: bool,
    /// The driving can be realised for this τ (no trap inversion).
    pub method_valid: bool,
    /// Why `method_valid` is false.
    pub method_issue: Option<String>,
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// ⟨W₁⟩ = (1/2)(ω₂Q* − ω₁)·coth(β₁ω₁/2).
pub fn stroke_work_compression(omega1: f64, omega2: f64, beta1: f64, qstar: f64) -> f64 {
    0.5 * (omega2 * qstar - omega1) * coth(0.5 * beta1 * omega1)
}

/// ⟨W₃⟩ = (1/2)(ω₁Q* − ω₂)·coth(β₂ω₂/2).
pub fn stroke_work_expansion(omega1: f64, omega2: f64, beta2: f64, qstar: f64) -> f64 {
    0.5 * (omega1 * qstar - omega2) * coth(0.5 * beta2 * omega2)
}

/// Heat absorbed from the hot bath after a compression with parameter `qstar1`.
pub fn isochore_heat(omega2: f64, baths: &BathPair, omega1: f64, qstar1: f64) -> f64 {
    0.5 * omega2
        * (coth(0.5 * baths.beta_hot * omega2) - qstar1 * coth(0.5 * baths.beta_cold * omega1))
}

/// Cost-aware efficiency −(W₁ + W₃)/(Q₂ + C₁ + C₃) on adiabatic works and heat.
pub fn efficiency_sta(
    w1_ad: f64,
    w3_ad: f64,
    q2_ad: f64,
    cost1: f64,
    cost3: f64,
) -> Result<f64, EngineError> {
    let work = w1_ad + w3_ad;
    let input = q2_ad + cost1 + cost3;
    if !(work < 0.0 && q2_ad > 0.0 && input > 0.0) {
        return Err(EngineError::NotAnEngine { work, heat: input });
    }
    Ok(-work / input)
}

/// Nonadiabatic efficiency −(W₁ + W₃)/Q₂.
pub fn efficiency_na(w1: f64, w3: f64, q2: f64) -> Result<f64, EngineError> {
    let work = w1 + w3;
    if !(work < 0.0 && q2 > 0.0) {
        return Err(EngineError::NotAnEngine { work, heat: q2 });
    }
    Ok(-work / q2)
}

/// Power −(W₁ + W₃)/(2τ).
pub fn power(w1: f64, w3: f64, tau: f64) -> f64 {
    -(w1 + w3) / (2.0 * tau)
}

/// Runs one cycle for `config.method`.
///
/// Shortcut methods use adiabatic works and heat and charge the time-averaged
/// driving cost of both strokes to the energy input. Validity problems are
/// reported in the flags; only numerical failures are errors.
pub fn run_cycle(config: &CycleConfig) -> Result<EnginePerformance, EngineError> {
    config.validate()?;
    let CycleConfig {
        omega1,
        omega2,
        baths,
        tau,
        method,
        numerics,
    } = *config;
    let compression = make_quintic_ramp(omega1, omega2, tau)?;
    let expansion = reverse_ramp(&compression);

    let (qstar1, qstar3) = match method {
        Method::Nonadiabatic => (
            qstar_na(&compression, &numerics.ode)?,
            qstar_na(&expansion, &numerics.ode)?,
        ),
        _ => (1.0, 1.0),
    };
    let w1 = stroke_work_compression(omega1, omega2, baths.beta_cold, qstar1);
    let w3 = stroke_work_expansion(omega1, omega2, baths.beta_hot, qstar3);
    let q2 = isochore_heat(omega2, &baths, omega1, qstar1);
    let engine_valid = w1 + w3 < 0.0 && q2 > 0.0;

    let costs: Result<(f64, f64), String> = match method {
        Method::Adiabatic | Method::Nonadiabatic => Ok((0.0, 0.0)),
        Method::Sta(sta) => stroke_costs(sta, config, &compression, &expansion)?,
    };

    let mut perf = EnginePerformance {
        tau,
        method,
        qstar1,
        qstar3,
        w1,
        w3,
        q2,
        cost1: None,
        cost3: None,
        eta: None,
        power: None,
        engine_valid,
        method_valid: costs.is_ok(),
        method_issue: None,
    };
    match costs {
        Ok((c1, c3)) => {
            perf.cost1 = Some(c1);
            perf.cost3 = Some(c3);
            perf.power = Some(power(w1, w3, tau));
            if engine_valid {
                perf.eta = efficiency_sta(w1, w3, q2, c1, c3).ok();
            }
        }
        Err(issue) => perf.method_issue = Some(issue),
    }
    Ok(perf)
}

/// Per-stroke costs, or the reason the shortcut cannot be applied.
fn stroke_costs(
    sta: StaMethod,
    config: &CycleConfig,
    compression: &crate::protocol::RampSpec,
    expansion: &crate::protocol::RampSpec,
) -> Result<Result<(f64, f64), String>, EngineError> {
    if sta == StaMethod::Ie {
        let bound = ie_min_duration(config.omega2);
        if config.tau <= bound {
            return Ok(Err(format!(
                "tau = {} does not exceed 1/(2 omega2) = {bound} (trap inversion)",
                config.tau
            )));
        }
    }
    let quad = &config.numerics.quad;
    let mut costs = [0.0; 2];
    for (slot, (ramp, beta)) in costs.iter_mut().zip([
        (compression, config.baths.beta_cold),
        (expansion, config.baths.beta_hot),
    ]) {
        let result =
            check_method_validity(sta, ramp).and_then(|_| time_avg_cost(sta, ramp, beta, quad));
        match result {
            Ok(c) => *slot = c,
            Err(e @ (StaError::TrapInversion { .. } | StaError::LcdInversion { .. })) => {
                return Ok(Err(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Ok((costs[0], costs[1])))
}
