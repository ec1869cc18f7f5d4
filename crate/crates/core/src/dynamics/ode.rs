//! Fixed-step Runge-Kutta integration of the parametric oscillator and the
//! nonadiabatic adiabaticity parameter.

use super::DynamicsError;
use crate::protocol::RampSpec;

/// Largest change in the result allowed when the step count is doubled.
pub const RICHARDSON_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OdeScheme {
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub n_steps: usize,
    pub scheme: OdeScheme,
    /// Re-run with twice the steps and fail if the answer moves by more than
    /// [`RICHARDSON_TOL`].
    pub richardson_check: bool,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            n_steps: 4096,
            scheme: OdeScheme::Rk4,
            richardson_check: true,
        }
    }
}

impl OdeConfig {
    pub const MIN_STEPS: usize = 16;

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if self.n_steps < Self::MIN_STEPS {
            return Err(DynamicsError::InvalidConfig(format!(
                "n_steps must be >= {}, got {}",
                Self::MIN_STEPS,
                self.n_steps
            )));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        Self {
            n_steps: self.n_steps * 2,
            richardson_check: false,
            ..*self
        }
    }
}

/// One classical RK4 step.
pub fn rk4_step<const N: usize>(
    rhs: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let axpy = |y: &[f64; N], k: &[f64; N], a: f64| -> [f64; N] {
        let mut out = *y;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += a * ki;
        }
        out
    };
    let k1 = rhs(t, y);
    let k2 = rhs(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = rhs(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = rhs(t + h, &axpy(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates from `t0` to `t1` in `n_steps` equal steps, calling `observe`
/// after every step (and once at `t0`). `observe` may abort the integration
/// by returning an error.
pub fn integrate<const N: usize, E>(
    rhs: impl Fn(f64, &[f64; N]) -> [f64; N],
    y0: [f64; N],
    t0: f64,
    t1: f64,
    n_steps: usize,
    mut observe: impl FnMut(f64, &[f64; N]) -> Result<(), E>,
) -> Result<[f64; N], E> {
    let h = (t1 - t0) / n_steps as f64;
    let mut y = y0;
    observe(t0, &y)?;
    for i in 0..n_steps {
        let t = t0 + i as f64 * h;
        y = rk4_step(&rhs, t, &y, h);
        let t_next = if i + 1 == n_steps {
            t1
        } else {
            t0 + (i + 1) as f64 * h
        };
        observe(t_next, &y)?;
    }
    Ok(y)
}

/// The two fundamental solutions of f̈ + ω²(t) f = 0 at the end of a stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSolutions {
    pub x: f64,
    pub xdot: f64,
    pub y: f64,
    pub ydot: f64,
}

impl OscillatorSolutions {
    /// X·Ẏ − Y·Ẋ, equal to −1 for the initial conditions used here.
    pub fn wronskian(&self) -> f64 {
        self.x * self.ydot - self.y * self.xdot
    }

    /// Adiabaticity parameter for a stroke from `omega_i` to a frequency
    /// `omega_f`.
    pub fn qstar(&self, omega_i: f64, omega_f: f64) -> f64 {
        let wf2 = omega_f * omega_f;
        (omega_i * omega_i * (wf2 * self.x * self.x + self.xdot * self.xdot)
            + (wf2 * self.y * self.y + self.ydot * self.ydot))
            / (2.0 * omega_i * omega_f)
    }
}

fn oscillator_rhs(ramp: &RampSpec) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] + '_ {
    move |t, s| {
        let w2 = ramp.omega_sq(t.clamp(0.0, ramp.tau()));
        [s[1], -w2 * s[0], s[3], -w2 * s[2]]
    }
}

/// Integrates X (X(0)=0, Ẋ(0)=1) and Y (Y(0)=1, Ẏ(0)=0) across the ramp.
pub fn fundamental_solutions(ramp: &RampSpec, n_steps: usize) -> OscillatorSolutions {
    let end = integrate::<4, std::convert::Infallible>(
        oscillator_rhs(ramp),
        [0.0, 1.0, 1.0, 0.0],
        0.0,
        ramp.tau(),
        n_steps,
        |_, _| Ok(()),
    )
    .unwrap_or_else(|e| match e {});
    OscillatorSolutions {
        x: end[0],
        xdot: end[1],
        y: end[2],
        ydot: end[3],
    }
}

/// Nonadiabatic adiabaticity parameter Q*_NA at the end of the stroke,
/// obtained from the classical solutions of the parametric oscillator.
///
/// With the Richardson check on, the doubled-step solution is returned and
/// the configured step count only serves as the error estimate.
pub fn qstar_na(ramp: &RampSpec, cfg: &OdeConfig) -> Result<f64, DynamicsError> {
    Ok(qstar_na_detailed(ramp, cfg)?.0)
}

/// Like [`qstar_na`], also returning the end-point solutions.
pub fn qstar_na_detailed(
    ramp: &RampSpec,
    cfg: &OdeConfig,
) -> Result<(f64, OscillatorSolutions), DynamicsError> {
    cfg.validate()?;
    let (wi, wf) = (ramp.omega_start(), ramp.omega_end());
    let sol = fundamental_solutions(ramp, cfg.n_steps);
    let q = sol.qstar(wi, wf);
    if !q.is_finite() {
        return Err(DynamicsError::NonFinite {
            t: ramp.tau(),
            value: q,
        });
    }
    if !cfg.richardson_check {
        return Ok((q, sol));
    }
    let fine_sol = fundamental_solutions(ramp, cfg.doubled().n_steps);
    let fine = fine_sol.qstar(wi, wf);
    if (fine - q).abs() > RICHARDSON_TOL {
        return Err(DynamicsError::RichardsonFailed {
            n_steps: cfg.n_steps,
            coarse: q,
            fine,
        });
    }
    Ok((fine, fine_sol))
}

/// Instantaneous Q*_NA(t) on `n_samples` evenly spaced times, using ω(t) as
/// the reference frequency. The step count is rounded up so every sample is
/// a step boundary.
pub fn qstar_na_trace(
    ramp: &RampSpec,
    cfg: &OdeConfig,
    n_samples: usize,
) -> Result<Vec<(f64, f64)>, DynamicsError> {
    cfg.validate()?;
    let n_samples = n_samples.max(2);
    let intervals = n_samples - 1;
    let per_interval = cfg.n_steps.div_ceil(intervals).max(1);
    let n_steps = per_interval * intervals;
    let wi = ramp.omega_start();
    let mut out = Vec::with_capacity(n_samples);
    let mut step = 0usize;
    integrate::<4, std::convert::Infallible>(
        oscillator_rhs(ramp),
        [0.0, 1.0, 1.0, 0.0],
        0.0,
        ramp.tau(),
        n_steps,
        |t, s| {
            if step.is_multiple_of(per_interval) {
                let sol = OscillatorSolutions {
                    x: s[0],
                    xdot: s[1],
                    y: s[2],
                    ydot: s[3],
                };
                let w = ramp.omega_sq(t).sqrt();
                out.push((t, sol.qstar(wi, w)));
            }
            step += 1;
            Ok(())
        },
    )
    .unwrap_or_else(|e| match e {});
    Ok(out)
}
