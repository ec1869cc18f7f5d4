//! Adiabaticity parameters and driving costs of the three shortcut methods.
//!
//! All quantities are closed-form functions of a single ramp sample
//! (ω, ω̇, ω̈) and of the stroke's initial thermal energy. Units: ħ = m = 1.

use std::fmt;

use thiserror::Error;

use crate::dynamics::{time_average, DynamicsError, QuadratureConfig};
use crate::protocol::{RampSample, RampSpec};
use crate::scan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StaMethod {
    /// Counterdiabatic driving.
    Cd,
    /// Local counterdiabatic driving.
    Lcd,
    /// Inverse engineering.
    Ie,
}

impl StaMethod {
    pub const ALL: [StaMethod; 3] = [StaMethod::Cd, StaMethod::Lcd, StaMethod::Ie];

    pub fn name(self) -> &'static str {
        match self {
            StaMethod::Cd => "CD",
            StaMethod::Lcd => "LCD",
            StaMethod::Ie => "IE",
        }
    }
}

impl fmt::Display for StaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StaError {
    #[error("{name} must be strictly positive, got {value}")]
    Domain { name: &'static str, value: f64 },
    /// ω̇² ≥ 4ω⁴: the counterdiabatic effective frequency is imaginary.
    #[error("counterdiabatic trap inversion at t = {t} (dω²/4ω⁴ = {ratio})")]
    TrapInversion { t: f64, ratio: f64 },
    /// Ω̃² ≤ 0 for the local counterdiabatic potential.
    #[error("local counterdiabatic trap inversion at t = {t} (squared frequency {value})")]
    LcdInversion { t: f64, value: f64 },
    #[error(transparent)]
    Numerics(#[from] DynamicsError),
}

/// Cost and Q* along one stroke.
#[derive(Debug, Clone, PartialEq)]
pub struct CostProfile {
    pub method: StaMethod,
    pub beta_init: f64,
    pub e0: f64,
    /// (t, Q*, cost density)
    pub samples: Vec<(f64, f64, f64)>,
    pub time_avg_cost: f64,
}

/// Thermal mean energy (ω/2)·coth(βω/2) of the oscillator at the start of a
/// stroke.
pub fn initial_mean_energy(omega: f64, beta: f64) -> Result<f64, StaError> {
    if omega.is_nan() || omega <= 0.0 {
        return Err(StaError::Domain {
            name: "omega",
            value: omega,
        });
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(StaError::Domain {
            name: "beta",
            value: beta,
        });
    }
    Ok(0.5 * omega / (0.5 * beta * omega).tanh())
}

/// ω̇²/(4ω⁴), the quantity that must stay below one for counterdiabatic
/// driving.
pub fn cd_ratio(sample: &RampSample) -> f64 {
    let w2 = sample.omega * sample.omega;
    sample.domega * sample.domega / (4.0 * w2 * w2)
}

/// Counterdiabatic effective frequency Ω = ω·sqrt(1 − ω̇²/(4ω⁴)).
pub fn effective_freq_cd(sample: &RampSample) -> Result<f64, StaError> {
    let ratio = cd_ratio(sample);
    if ratio.is_nan() || ratio >= 1.0 {
        return Err(StaError::TrapInversion { t: sample.t, ratio });
    }
    Ok(sample.omega * (1.0 - ratio).sqrt())
}

pub fn qstar_cd(sample: &RampSample) -> Result<f64, StaError> {
    Ok(sample.omega / effective_freq_cd(sample)?)
}

pub fn qstar_lcd(sample: &RampSample) -> f64 {
    let w = sample.omega;
    1.0 - cd_ratio(sample) + sample.ddomega / (4.0 * w * w * w)
}

pub fn qstar_ie(sample: &RampSample) -> f64 {
    1.0 + 0.5 * cd_ratio(sample)
}

/// Ω̃² = ω² − 3ω̇²/(4ω²) + ω̈/(2ω). Negative values mean the local potential
/// is inverted; the sign is returned, not raised.
pub fn lcd_freq_sq(sample: &RampSample) -> f64 {
    let w = sample.omega;
    w * w - 3.0 * sample.domega * sample.domega / (4.0 * w * w) + sample.ddomega / (2.0 * w)
}

pub fn qstar(method: StaMethod, sample: &RampSample) -> Result<f64, StaError> {
    match method {
        StaMethod::Cd => qstar_cd(sample),
        StaMethod::Lcd => Ok(qstar_lcd(sample)),
        StaMethod::Ie => Ok(qstar_ie(sample)),
    }
}

/// ⟨H_STA(t)⟩ = (ω/ω_i)·e0·(Q*(t) − 1).
///
/// The LCD density can be negative at intermediate times and is returned
/// unclamped.
pub fn cost_density(
    method: StaMethod,
    sample: &RampSample,
    omega_init: f64,
    e0: f64,
) -> Result<f64, StaError> {
    let excess = match method {
        StaMethod::Cd => qstar_cd(sample)? - 1.0,
        StaMethod::Lcd => {
            let w = sample.omega;
            -cd_ratio(sample) + sample.ddomega / (4.0 * w * w * w)
        }
        StaMethod::Ie => 0.5 * cd_ratio(sample),
    };
    Ok(sample.omega / omega_init * e0 * excess)
}

/// Checks that `method` can be applied along the whole ramp.
///
/// CD needs ω̇² < 4ω⁴ and LCD needs Ω̃² > 0 at every time; IE on a given
/// ramp is always defined. The first offending time is reported.
pub fn check_method_validity(method: StaMethod, ramp: &RampSpec) -> Result<(), StaError> {
    let tau = ramp.tau();
    match method {
        StaMethod::Cd => {
            let margin = |t: f64| 1.0 - cd_ratio(&ramp.eval_unchecked(t));
            match scan::first_nonpositive(margin, tau, scan::DEFAULT_GRID) {
                Some((t, m)) => Err(StaError::TrapInversion { t, ratio: 1.0 - m }),
                None => Ok(()),
            }
        }
        StaMethod::Lcd => {
            let margin = |t: f64| lcd_freq_sq(&ramp.eval_unchecked(t));
            match scan::first_nonpositive(margin, tau, scan::DEFAULT_GRID) {
                Some((t, value)) => Err(StaError::LcdInversion { t, value }),
                None => Ok(()),
            }
        }
        StaMethod::Ie => Ok(()),
    }
}

/// Time average (1/τ)∫₀^τ ⟨H_STA(t)⟩ dt for a stroke starting in a thermal
/// state at `beta_init`.
///
/// Only the CD validity domain is enforced here; LCD inversion is a physical
/// flag left to the caller (see [`check_method_validity`]).
pub fn time_avg_cost(
    method: StaMethod,
    ramp: &RampSpec,
    beta_init: f64,
    quad: &QuadratureConfig,
) -> Result<f64, StaError> {
    let omega_init = ramp.omega_start();
    let e0 = initial_mean_energy(omega_init, beta_init)?;
    if method == StaMethod::Cd {
        check_method_validity(method, ramp)?;
    }
    let density =
        |t: f64| cost_density(method, &ramp.eval_unchecked(t), omega_init, e0).unwrap_or(f64::NAN);
    Ok(time_average(density, ramp.tau(), quad)?)
}

/// Sampled Q*(t) and cost density plus the time-averaged cost.
pub fn cost_profile(
    method: StaMethod,
    ramp: &RampSpec,
    beta_init: f64,
    n_samples: usize,
    quad: &QuadratureConfig,
) -> Result<CostProfile, StaError> {
    let omega_init = ramp.omega_start();
    let e0 = initial_mean_energy(omega_init, beta_init)?;
    let time_avg_cost = time_avg_cost(method, ramp, beta_init, quad)?;
    let samples = ramp
        .samples(n_samples)
        .iter()
        .map(|s| {
            Ok((
                s.t,
                qstar(method, s)?,
                cost_density(method, s, omega_init, e0)?,
            ))
        })
        .collect::<Result<Vec<_>, StaError>>()?;
    Ok(CostProfile {
        method,
        beta_init,
        e0,
        samples,
        time_avg_cost,
    })
}
