//! Frequency protocols ω(t) for the compression and expansion strokes.
//!
//! Every ramp carries exact first and second time derivatives so that the
//! shortcut drivings, which depend on ω̇ and ω̈, never go through numerical
//! differentiation.

use crate::scan;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("{name} must be strictly positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("t = {t} lies outside the stroke [0, {tau}]")]
    OutOfRange { t: f64, tau: f64 },
    #[error("stroke duration {tau} does not exceed the non-inversion bound {bound}")]
    TooFast { tau: f64, bound: f64 },
    #[error("designed squared frequency is {value} at t = {t} (trap inversion)")]
    TrapInversion { t: f64, value: f64 },
}

/// Shape of the frequency protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RampKind {
    /// ω(s) = ω_i + Δ(10s³ − 15s⁴ + 6s⁵).
    QuinticPolynomial,
    /// ω(t) deduced from a polynomial Ermakov scaling function b(t), see
    /// [`crate::dynamics::design_ie_frequency`].
    BScaled(ScalingProfile),
}

/// Interpolant used for the Ermakov scaling function b(t) between 1 and γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalingProfile {
    /// Degree 5: ḃ and b̈ vanish at both ends. The deduced ω(t) has the
    /// requested endpoint values but a nonzero slope there.
    Quintic,
    /// Degree 9: derivatives up to fourth order vanish at both ends, so ω̇
    /// and ω̈ vanish as well. Needs a longer stroke to stay confining.
    Nonic,
}

/// A frequency protocol on `[0, tau]`.
///
/// `omega_start` and `omega_end` are the endpoints as traversed. A reversed
/// ramp keeps the generating shape and evaluates it at `tau - t`, which makes
/// [`reverse_ramp`] an exact involution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampSpec {
    omega_start: f64,
    omega_end: f64,
    tau: f64,
    kind: RampKind,
    reversed: bool,
}

/// One evaluation of a ramp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampSample {
    pub t: f64,
    /// t / tau
    pub s: f64,
    pub omega: f64,
    pub domega: f64,
    pub ddomega: f64,
}

/// Violations found by [`check_boundary_conditions`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryViolation {
    StartFrequency { expected: f64, found: f64 },
    EndFrequency { expected: f64, found: f64 },
    Slope { t: f64, value: f64 },
    Curvature { t: f64, value: f64 },
}

fn positive(name: &'static str, value: f64) -> Result<f64, ProtocolError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ProtocolError::NonPositive { name, value })
    }
}

/// Builds the quintic ramp with vanishing slope and curvature at both ends.
pub fn make_quintic_ramp(
    omega_start: f64,
    omega_end: f64,
    tau: f64,
) -> Result<RampSpec, ProtocolError> {
    Ok(RampSpec {
        omega_start: positive("omega_start", omega_start)?,
        omega_end: positive("omega_end", omega_end)?,
        tau: positive("tau", tau)?,
        kind: RampKind::QuinticPolynomial,
        reversed: false,
    })
}

/// Constant frequency held for `tau`. Useful as a static reference protocol.
pub fn make_constant_ramp(omega: f64, tau: f64) -> Result<RampSpec, ProtocolError> {
    make_quintic_ramp(omega, omega, tau)
}

pub(crate) fn make_bscaled_ramp(
    omega_start: f64,
    omega_end: f64,
    tau: f64,
    profile: ScalingProfile,
) -> Result<RampSpec, ProtocolError> {
    Ok(RampSpec {
        kind: RampKind::BScaled(profile),
        ..make_quintic_ramp(omega_start, omega_end, tau)?
    })
}

/// Returns the ramp traversed backwards in time: ω_rev(t) = ω(τ − t).
pub fn reverse_ramp(ramp: &RampSpec) -> RampSpec {
    RampSpec {
        omega_start: ramp.omega_end,
        omega_end: ramp.omega_start,
        reversed: !ramp.reversed,
        ..*ramp
    }
}

/// Evaluates ω and its derivatives at `t ∈ [0, tau]`.
pub fn eval_ramp(ramp: &RampSpec, t: f64) -> Result<RampSample, ProtocolError> {
    ramp.eval(t)
}

impl RampSpec {
    pub fn omega_start(&self) -> f64 {
        self.omega_start
    }

    pub fn omega_end(&self) -> f64 {
        self.omega_end
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn kind(&self) -> RampKind {
        self.kind
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn eval(&self, t: f64) -> Result<RampSample, ProtocolError> {
        if !(0.0..=self.tau).contains(&t) {
            return Err(ProtocolError::OutOfRange { t, tau: self.tau });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Evaluation without the range check, for tight integration loops that
    /// only ever query grid points inside the stroke.
    pub(crate) fn eval_unchecked(&self, t: f64) -> RampSample {
        let (t_gen, sign) = if self.reversed {
            (self.tau - t, -1.0)
        } else {
            (t, 1.0)
        };
        let (w_from, w_to) = self.generator_endpoints();
        let (omega, domega, ddomega) = match self.kind {
            RampKind::QuinticPolynomial => quintic(w_from, w_to, self.tau, t_gen),
            RampKind::BScaled(profile) => bscaled(profile, w_from, w_to, self.tau, t_gen),
        };
        RampSample {
            t,
            s: t / self.tau,
            omega,
            domega: sign * domega,
            ddomega,
        }
    }

    /// Squared frequency, the only quantity the equations of motion need.
    pub(crate) fn omega_sq(&self, t: f64) -> f64 {
        let w = self.eval_unchecked(t).omega;
        w * w
    }

    fn generator_endpoints(&self) -> (f64, f64) {
        if self.reversed {
            (self.omega_end, self.omega_start)
        } else {
            (self.omega_start, self.omega_end)
        }
    }

    /// `n` evenly spaced samples covering both endpoints.
    pub fn samples(&self, n: usize) -> Vec<RampSample> {
        grid(self.tau, n).map(|t| self.eval_unchecked(t)).collect()
    }
}

/// Evenly spaced points on `[0, tau]`; the last point is exactly `tau`.
pub(crate) fn grid(tau: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| {
        if i + 1 == n {
            tau
        } else {
            tau * i as f64 / (n - 1) as f64
        }
    })
}

fn quintic(w_from: f64, w_to: f64, tau: f64, t: f64) -> (f64, f64, f64) {
    let delta = w_to - w_from;
    let s = t / tau;
    let s2 = s * s;
    let p = s2 * s * (10.0 - 15.0 * s + 6.0 * s2);
    let dp = 30.0 * s2 * (1.0 - 2.0 * s + s2);
    let ddp = 60.0 * s * (1.0 - 3.0 * s + 2.0 * s2);
    (
        w_from + delta * p,
        delta * dp / tau,
        delta * ddp / (tau * tau),
    )
}

/// Smoothstep polynomial of the profile and its first four derivatives in s.
/// Value 0 at s = 0 and 1 at s = 1.
pub(crate) fn smoothstep(profile: ScalingProfile, s: f64) -> [f64; 5] {
    // coefficients of s^lowest, s^(lowest+1), ...
    let (lowest, coeffs): (i32, &[f64]) = match profile {
        ScalingProfile::Quintic => (3, &[10.0, -15.0, 6.0]),
        ScalingProfile::Nonic => (5, &[126.0, -420.0, 540.0, -315.0, 70.0]),
    };
    let mut out = [0.0; 5];
    for (j, c) in coeffs.iter().enumerate() {
        let pow = lowest + j as i32;
        let mut coef = *c;
        for (d, slot) in out.iter_mut().enumerate() {
            let exp = pow - d as i32;
            if exp < 0 {
                break;
            }
            *slot += coef * s.powi(exp);
            coef *= exp as f64;
        }
    }
    out
}

/// Scaling function b(t) = 1 + (γ − 1)·P(t/τ) with γ = sqrt(ω₀/ω_f), and its
/// time derivatives up to fourth order.
pub(crate) fn scaling_function(
    profile: ScalingProfile,
    w0: f64,
    wf: f64,
    tau: f64,
    t: f64,
) -> [f64; 5] {
    let gamma = (w0 / wf).sqrt();
    let p = smoothstep(profile, t / tau);
    let mut b = [0.0; 5];
    let mut scale = gamma - 1.0;
    for (bd, pd) in b.iter_mut().zip(p) {
        *bd = scale * pd;
        scale /= tau;
    }
    b[0] += 1.0;
    b
}

/// Radicand ω² = ω₀²/b⁴ − b̈/b of the frequency deduced from the Ermakov
/// equation.
pub(crate) fn bscaled_omega_sq(profile: ScalingProfile, w0: f64, wf: f64, tau: f64, t: f64) -> f64 {
    let [b, _, bdd, _, _] = scaling_function(profile, w0, wf, tau, t);
    w0 * w0 / b.powi(4) - bdd / b
}

fn bscaled(profile: ScalingProfile, w0: f64, wf: f64, tau: f64, t: f64) -> (f64, f64, f64) {
    let [b, b1, b2, b3, b4] = scaling_function(profile, w0, wf, tau, t);
    let k = w0 * w0;
    let inv = 1.0 / b;
    let f = k * inv.powi(4) - b2 * inv;
    let df = -4.0 * k * b1 * inv.powi(5) - b3 * inv + b2 * b1 * inv * inv;
    let ddf = 20.0 * k * b1 * b1 * inv.powi(6) - 4.0 * k * b2 * inv.powi(5) - b4 * inv
        + (2.0 * b3 * b1 + b2 * b2) * inv * inv
        - 2.0 * b2 * b1 * b1 * inv.powi(3);
    let omega = f.sqrt();
    let domega = df / (2.0 * omega);
    let ddomega = (ddf - 2.0 * domega * domega) / (2.0 * omega);
    (omega, domega, ddomega)
}

/// Checks ω(0), ω(τ) against the declared endpoints and that ω̇, ω̈ vanish at
/// both ends. Slopes are compared against `tol·max(ω_i, ω_f)/τ`.
pub fn check_boundary_conditions(ramp: &RampSpec, tol: f64) -> Vec<BoundaryViolation> {
    check_boundary_samples(
        &ramp.eval_unchecked(0.0),
        &ramp.eval_unchecked(ramp.tau),
        ramp.omega_start,
        ramp.omega_end,
        ramp.tau,
        tol,
    )
}

/// Same checks as [`check_boundary_conditions`] for an arbitrary sampled
/// protocol, used to show that a plain linear ramp is not a valid shortcut.
pub fn check_boundary_samples(
    first: &RampSample,
    last: &RampSample,
    omega_start: f64,
    omega_end: f64,
    tau: f64,
    tol: f64,
) -> Vec<BoundaryViolation> {
    let mut report = Vec::new();
    let w_scale = omega_start.max(omega_end);
    let deriv_tol = tol * w_scale / tau;
    if (first.omega - omega_start).abs() > tol * w_scale {
        report.push(BoundaryViolation::StartFrequency {
            expected: omega_start,
            found: first.omega,
        });
    }
    if (last.omega - omega_end).abs() > tol * w_scale {
        report.push(BoundaryViolation::EndFrequency {
            expected: omega_end,
            found: last.omega,
        });
    }
    for sample in [first, last] {
        if sample.domega.abs() > deriv_tol {
            report.push(BoundaryViolation::Slope {
                t: sample.t,
                value: sample.domega,
            });
        }
        if sample.ddomega.abs() > deriv_tol {
            report.push(BoundaryViolation::Curvature {
                t: sample.t,
                value: sample.ddomega,
            });
        }
    }
    report
}

/// Smallest value of the BScaled radicand over the stroke and where it occurs.
pub(crate) fn bscaled_min_radicand(
    profile: ScalingProfile,
    w0: f64,
    wf: f64,
    tau: f64,
) -> (f64, f64) {
    scan::scan_min(
        |t| bscaled_omega_sq(profile, w0, wf, tau, t),
        tau,
        scan::DEFAULT_GRID,
    )
}
