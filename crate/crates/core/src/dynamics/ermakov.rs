//! Ermakov scaling function b(t) and the inverse-engineered frequency built
//! from it.

use super::ode::{integrate, OdeConfig, RICHARDSON_TOL};
use super::DynamicsError;
use crate::protocol::{self, ProtocolError, RampKind, RampSpec, ScalingProfile};

/// Solution of b̈ + ω²(t) b = ω₀²/b³ on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ErmakovTrace {
    pub grid: Vec<f64>,
    pub b: Vec<f64>,
    pub bdot: Vec<f64>,
    /// b̈ taken from the right-hand side of the equation at each grid point.
    pub bddot: Vec<f64>,
    pub omega0: f64,
}

impl ErmakovTrace {
    pub fn final_b(&self) -> f64 {
        *self.b.last().expect("trace has at least two points")
    }

    /// Largest |b̈ + ω²b − ω₀²/b³| on the grid with b̈ obtained by
    /// fourth-order finite differences of the integrated b, so the check does
    /// not reuse the equation it is testing. The two points at each end are
    /// skipped.
    pub fn max_residual(&self, omega_sq: impl Fn(f64) -> f64) -> f64 {
        let n = self.b.len();
        if n < 5 {
            return f64::NAN;
        }
        let h = self.grid[1] - self.grid[0];
        let w02 = self.omega0 * self.omega0;
        (2..n - 2)
            .map(|i| {
                let b = &self.b;
                let bdd = (-b[i - 2] + 16.0 * b[i - 1] - 30.0 * b[i] + 16.0 * b[i + 1] - b[i + 2])
                    / (12.0 * h * h);
                (bdd + omega_sq(self.grid[i]) * b[i] - w02 / b[i].powi(3)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Integrates the Ermakov equation for a squared frequency `omega_sq(t)` on
/// `[0, tau]`.
pub fn solve_ermakov(
    omega_sq: impl Fn(f64) -> f64,
    tau: f64,
    b0: f64,
    bdot0: f64,
    omega0: f64,
    cfg: &OdeConfig,
) -> Result<ErmakovTrace, DynamicsError> {
    cfg.validate()?;
    if !(b0 > 0.0 && b0.is_finite()) {
        return Err(DynamicsError::InvalidConfig(format!(
            "b0 must be positive, got {b0}"
        )));
    }
    let trace = integrate_ermakov(&omega_sq, tau, b0, bdot0, omega0, cfg.n_steps)?;
    if cfg.richardson_check {
        let fine = integrate_ermakov(&omega_sq, tau, b0, bdot0, omega0, 2 * cfg.n_steps)?;
        let (coarse_b, fine_b) = (trace.final_b(), fine.final_b());
        if (fine_b - coarse_b).abs() > RICHARDSON_TOL {
            return Err(DynamicsError::RichardsonFailed {
                n_steps: cfg.n_steps,
                coarse: coarse_b,
                fine: fine_b,
            });
        }
    }
    Ok(trace)
}

/// [`solve_ermakov`] driven by a ramp's ω(t).
pub fn solve_ermakov_on_ramp(
    ramp: &RampSpec,
    b0: f64,
    bdot0: f64,
    omega0: f64,
    cfg: &OdeConfig,
) -> Result<ErmakovTrace, DynamicsError> {
    let tau = ramp.tau();
    solve_ermakov(
        |t| ramp.omega_sq(t.clamp(0.0, tau)),
        tau,
        b0,
        bdot0,
        omega0,
        cfg,
    )
}

fn integrate_ermakov(
    omega_sq: &impl Fn(f64) -> f64,
    tau: f64,
    b0: f64,
    bdot0: f64,
    omega0: f64,
    n_steps: usize,
) -> Result<ErmakovTrace, DynamicsError> {
    let w02 = omega0 * omega0;
    let rhs = |t: f64, y: &[f64; 2]| [y[1], w02 / y[0].powi(3) - omega_sq(t) * y[0]];
    let mut trace = ErmakovTrace {
        grid: Vec::with_capacity(n_steps + 1),
        b: Vec::with_capacity(n_steps + 1),
        bdot: Vec::with_capacity(n_steps + 1),
        bddot: Vec::with_capacity(n_steps + 1),
        omega0,
    };
    integrate(rhs, [b0, bdot0], 0.0, tau, n_steps, |t, y| {
        if !(y[0] > 0.0 && y[0].is_finite()) {
            return Err(DynamicsError::TrapCollapse { t, b: y[0] });
        }
        trace.grid.push(t);
        trace.b.push(y[0]);
        trace.bdot.push(y[1]);
        trace.bddot.push(rhs(t, y)[1]);
        Ok(())
    })?;
    Ok(trace)
}

/// Shortest stroke the inverse-engineering protocol admits, 1/(2ω_f).
pub fn ie_min_duration(omega_end: f64) -> f64 {
    1.0 / (2.0 * omega_end)
}

/// Inverse-engineered frequency ramp.
///
/// b(t) is the quintic interpolant from 1 to γ = sqrt(ω₀/ω_f), ω₀ =
/// `omega_start`, with ḃ = b̈ = 0 at both ends, and the frequency follows from
/// the Ermakov equation as ω(t) = sqrt(ω₀²/b⁴ − b̈/b).
pub fn design_ie_frequency(
    omega_start: f64,
    omega_end: f64,
    tau: f64,
) -> Result<RampSpec, ProtocolError> {
    design_ie_frequency_with(ScalingProfile::Quintic, omega_start, omega_end, tau)
}

/// [`design_ie_frequency`] with a chosen interpolant for b(t).
/// [`ScalingProfile::Nonic`] also makes ω̇ and ω̈ vanish at the ends.
pub fn design_ie_frequency_with(
    profile: ScalingProfile,
    omega_start: f64,
    omega_end: f64,
    tau: f64,
) -> Result<RampSpec, ProtocolError> {
    let ramp = protocol::make_bscaled_ramp(omega_start, omega_end, tau, profile)?;
    let bound = ie_min_duration(omega_end);
    if tau <= bound {
        return Err(ProtocolError::TooFast { tau, bound });
    }
    let (t, value) = protocol::bscaled_min_radicand(profile, omega_start, omega_end, tau);
    if value <= 0.0 {
        return Err(ProtocolError::TrapInversion { t, value });
    }
    Ok(ramp)
}

/// The designed scaling function b(t) and its first two derivatives, or
/// `None` if the ramp was not built from one.
pub fn designed_scaling(ramp: &RampSpec, t: f64) -> Option<(f64, f64, f64)> {
    let RampKind::BScaled(profile) = ramp.kind() else {
        return None;
    };
    let (w0, wf) = if ramp.is_reversed() {
        (ramp.omega_end(), ramp.omega_start())
    } else {
        (ramp.omega_start(), ramp.omega_end())
    };
    let tg = if ramp.is_reversed() {
        ramp.tau() - t
    } else {
        t
    };
    let sign = if ramp.is_reversed() { -1.0 } else { 1.0 };
    let [b, b1, b2, _, _] = protocol::scaling_function(profile, w0, wf, ramp.tau(), tg);
    Some((b, sign * b1, b2))
}
