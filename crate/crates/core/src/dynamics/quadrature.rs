//! Composite Simpson quadrature with panel doubling.

use super::DynamicsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Initial number of panels; must be even and at least 2.
    pub n_panels: usize,
    pub rel_tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            n_panels: 64,
            rel_tol: 1e-10,
            max_refinements: 16,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        if self.n_panels < 2 || !self.n_panels.is_multiple_of(2) {
            return Err(DynamicsError::InvalidConfig(format!(
                "n_panels must be even and >= 2, got {}",
                self.n_panels
            )));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(DynamicsError::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Each refinement doubles the panel count and only evaluates the new odd
/// nodes. Converged once successive estimates agree to `rel_tol`, or once the
/// difference is at rounding level relative to ∫|f|, which covers integrands
/// whose integral vanishes.
pub fn quadrature(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, DynamicsError> {
    cfg.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let eval = |t: f64| -> Result<f64, DynamicsError> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(DynamicsError::NonFinite { t, value: v })
        }
    };

    let mut n = cfg.n_panels;
    let mut h = (b - a) / n as f64;
    // Simpson weights: ends 1, odd nodes 4, even interior nodes 2.
    let fa = eval(a)?;
    let fb = eval(b)?;
    let ends = fa + fb;
    let ends_abs = fa.abs() + fb.abs();
    let mut even = (0.0, 0.0);
    let mut odd = (0.0, 0.0);
    for i in 1..n {
        let v = eval(a + i as f64 * h)?;
        let slot = if i % 2 == 0 { &mut even } else { &mut odd };
        slot.0 += v;
        slot.1 += v.abs();
    }
    let simpson =
        |ends: f64, even: f64, odd: f64, h: f64| h / 3.0 * (ends + 2.0 * even + 4.0 * odd);
    let mut estimate = simpson(ends, even.0, odd.0, h);
    let mut previous = f64::NAN;

    for _ in 0..cfg.max_refinements {
        // old interior nodes all become even nodes
        even = (even.0 + odd.0, even.1 + odd.1);
        n *= 2;
        h = (b - a) / n as f64;
        odd = (0.0, 0.0);
        for i in (1..n).step_by(2) {
            let v = eval(a + i as f64 * h)?;
            odd.0 += v;
            odd.1 += v.abs();
        }
        let next = simpson(ends, even.0, odd.0, h);
        let abs_scale = simpson(ends_abs, even.1, odd.1, h).abs();
        let diff = (next - estimate).abs();
        if diff <= cfg.rel_tol * next.abs() || diff <= 8.0 * f64::EPSILON * abs_scale {
            return Ok(next);
        }
        previous = estimate;
        estimate = next;
    }
    Err(DynamicsError::QuadratureNotConverged {
        last: estimate,
        previous,
    })
}

/// Time average (1/τ)∫₀^τ f dt.
pub fn time_average(
    f: impl Fn(f64) -> f64,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, DynamicsError> {
    Ok(quadrature(f, 0.0, tau, cfg)? / tau)
}
