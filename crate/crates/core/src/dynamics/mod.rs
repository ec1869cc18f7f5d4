//! Numerical kernels: Simpson quadrature, fixed-step RK4 for the parametric
//! oscillator, and the Ermakov equation.

mod ermakov;
mod ode;
mod quadrature;

pub use ermakov::{
    design_ie_frequency, design_ie_frequency_with, designed_scaling, ie_min_duration,
    solve_ermakov, solve_ermakov_on_ramp, ErmakovTrace,
};
pub use ode::{
    fundamental_solutions, integrate, qstar_na, qstar_na_detailed, qstar_na_trace, rk4_step,
    OdeConfig, OdeScheme, OscillatorSolutions, RICHARDSON_TOL,
};
pub use quadrature::{quadrature, time_average, QuadratureConfig};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("invalid numerical configuration: {0}")]
    InvalidConfig(String),
    #[error("integrand is {value} at t = {t}")]
    NonFinite { t: f64, value: f64 },
    #[error("quadrature did not converge (last estimates {previous} and {last})")]
    QuadratureNotConverged { last: f64, previous: f64 },
    #[error("Richardson check failed at {n_steps} steps: {coarse} vs {fine} with doubled steps")]
    RichardsonFailed {
        n_steps: usize,
        coarse: f64,
        fine: f64,
    },
    #[error("scaling function reached b = {b} at t = {t} (trap collapse)")]
    TrapCollapse { t: f64, b: f64 },
}
