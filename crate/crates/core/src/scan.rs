//! Locating the minimum of a smooth margin function on a stroke.

pub(crate) const DEFAULT_GRID: usize = 10_001;

/// Minimum of `f` on `[0, tau]`: coarse scan on `n` points, then golden-section
/// refinement inside the two cells adjacent to the best grid point.
/// Returns `(t_min, f_min)`.
pub(crate) fn scan_min(f: impl Fn(f64) -> f64, tau: f64, n: usize) -> (f64, f64) {
    let n = n.max(3);
    let h = tau / (n - 1) as f64;
    let mut best = (0.0, f(0.0));
    for i in 1..n {
        let t = if i + 1 == n { tau } else { i as f64 * h };
        let v = f(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    let lo = (best.0 - h).max(0.0);
    let hi = (best.0 + h).min(tau);
    let refined = golden_min(&f, lo, hi, 80);
    if refined.1 < best.1 {
        refined
    } else {
        best
    }
}

/// First grid point where `f <= 0`, falling back to the refined minimiser when
/// the violation sits strictly between grid points.
pub(crate) fn first_nonpositive(f: impl Fn(f64) -> f64, tau: f64, n: usize) -> Option<(f64, f64)> {
    let (t_min, v_min) = scan_min(&f, tau, n);
    if v_min > 0.0 {
        return None;
    }
    let n = n.max(3);
    let h = tau / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { tau } else { i as f64 * h })
        .map(|t| (t, f(t)))
        .find(|(_, v)| *v <= 0.0)
        .or(Some((t_min, v_min)))
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
        if (b - a).abs() <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_off_grid_minimum() {
        let (t, v) = scan_min(|t| (t - 0.123_456_7).powi(2) - 1e-12, 1.0, 11);
        assert!((t - 0.123_456_7).abs() < 1e-6);
        assert!(v < 0.0);
        let hit = first_nonpositive(|t| (t - 0.123_456_7).powi(2) - 1e-12, 1.0, 11).unwrap();
        assert!((hit.0 - 0.123_456_7).abs() < 1e-6);
    }

    #[test]
    fn first_violation_is_earliest() {
        let hit = first_nonpositive(|t| (t - 0.5).abs() - 0.25, 1.0, 101).unwrap();
        assert!((hit.0 - 0.25).abs() < 1e-12);
        assert!(first_nonpositive(|t| 1.0 + t, 1.0, 101).is_none());
    }
}
