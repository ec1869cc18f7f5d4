//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sta_otto::cli::{self, RunConfig};
use sta_otto::dynamics::{
    design_ie_frequency, qstar_na, qstar_na_detailed, solve_ermakov_on_ramp, OdeConfig,
    QuadratureConfig,
};
use sta_otto::engine::{
    power, run_cycle, BathPair, CycleConfig, EnginePerformance, Method, Numerics,
};
use sta_otto::protocol::{make_quintic_ramp, reverse_ramp, RampSpec};
use sta_otto::sta::{cost_density, initial_mean_energy, qstar, qstar_cd, time_avg_cost, StaMethod};

const W1: f64 = 0.32;
const W2: f64 = 1.0;
const B1: f64 = 0.5;
const B2: f64 = 0.05;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn baseline(tau: f64, method: Method) -> CycleConfig {
    CycleConfig {
        omega1: W1,
        omega2: W2,
        baths: BathPair {
            beta_cold: B1,
            beta_hot: B2,
        },
        tau,
        method,
        numerics: Numerics::default(),
    }
}

fn cycle(tau: f64, method: Method) -> Result<EnginePerformance, String> {
    run_cycle(&baseline(tau, method)).map_err(|e| format!("{method} at tau {tau}: {e}"))
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn strokes(tau: f64) -> [(RampSpec, f64); 2] {
    let c = make_quintic_ramp(W1, W2, tau).unwrap();
    [(reverse_ramp(&c), B2), (c, B1)]
}

/// Independent closed form of the quintic ramp: (ω, ω̇, ω̈) at time t.
fn quintic(tau: f64, t: f64) -> (f64, f64, f64) {
    let d = W2 - W1;
    let s = t / tau;
    let w = W1 + d * s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    let wd = d / tau * 30.0 * s * s * (1.0 - s) * (1.0 - s);
    let wdd = d / (tau * tau) * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
    (w, wd, wdd)
}

fn adiabatic_anchor() -> Outcome {
    let config = baseline(3.0, Method::Adiabatic);
    run_cycle(&config).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let p = run_cycle(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    // closed forms with Q* = 1
    let coth = |x: f64| 1.0 / x.tanh();
    let w1 = (W2 - W1) / 2.0 * coth(B1 * W1 / 2.0);
    let w3 = (W1 - W2) / 2.0 * coth(B2 * W2 / 2.0);
    let q2 = W2 / 2.0 * (coth(B2 * W2 / 2.0) - coth(B1 * W1 / 2.0));
    let eta = p.eta.ok_or("no efficiency")?;
    ensure((eta - 0.68).abs() <= 1e-12, || format!("eta = {eta}"))?;
    // the last column is a 30-digit evaluation of the same closed forms
    for (name, got, want, oracle) in [
        ("W1", p.w1, w1, 4.259_062_800_578_623),
        ("W3", p.w3, w3, -13.602_833_215_284_804),
        ("Q2", p.q2, q2, 13.740_838_845_156_15),
    ] {
        ensure((got - want).abs() <= 1e-5, || {
            format!("{name} = {got}, closed form {want}")
        })?;
        ensure((got - oracle).abs() <= 1e-5, || {
            format!("{name} = {got}, oracle {oracle}")
        })?;
    }
    ensure(elapsed < Duration::from_millis(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "eta = {eta}, W1 = {:.6}, W3 = {:.6}, Q2 = {:.6}, {elapsed:?}",
        p.w1, p.w3, p.q2
    ))
}

fn nonadiabatic_limits() -> Outcome {
    let start = Instant::now();
    let cfg = OdeConfig::default();
    let mut detail = Vec::new();
    for (tau, expect) in [(1e-4, 1.7225), (100.0, 1.0)] {
        for ramp in [
            make_quintic_ramp(W1, W2, tau).unwrap(),
            reverse_ramp(&make_quintic_ramp(W1, W2, tau).unwrap()),
        ] {
            let (q, sol) = qstar_na_detailed(&ramp, &cfg).map_err(|e| e.to_string())?;
            ensure((q - expect).abs() <= 1e-3, || format!("Q*_NA({tau}) = {q}"))?;
            let w = sol.wronskian();
            ensure((w + 1.0).abs() <= 1e-9, || {
                format!("Wronskian {w} at tau {tau}")
            })?;
            detail.push(format!("{q:.6}"));
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("Q*_NA = [{}], {elapsed:?}", detail.join(", ")))
}

fn boundary_normalization() -> Outcome {
    let mut checked = 0;
    for tau in log_grid(0.6, 50.0, 20) {
        for (ramp, beta) in strokes(tau) {
            let e0 = initial_mean_energy(ramp.omega_start(), beta).unwrap();
            for t in [0.0, tau] {
                let s = ramp.eval(t).unwrap();
                for m in StaMethod::ALL {
                    let q = qstar(m, &s).map_err(|e| format!("{m} at t = {t}: {e}"))?;
                    let c = cost_density(m, &s, ramp.omega_start(), e0).unwrap();
                    ensure((q - 1.0).abs() <= 1e-9 && c.abs() <= 1e-9, || {
                        format!("{m}, tau {tau}, t {t}: Q* = {q}, cost density {c}")
                    })?;
                    checked += 1;
                }
            }
            let p = cycle(tau, Method::Adiabatic)?;
            ensure(p.qstar1 == 1.0 && p.qstar3 == 1.0, || "AD Q* != 1".into())?;
        }
    }
    Ok(format!(
        "{checked} endpoint evaluations (CD, LCD, IE) plus AD"
    ))
}

fn sweep_rows(tau_min: f64, tau_max: f64, n: usize) -> Result<Vec<Vec<EnginePerformance>>, String> {
    log_grid(tau_min, tau_max, n)
        .into_iter()
        .map(|tau| Method::ALL.iter().map(|&m| cycle(tau, m)).collect())
        .collect()
}

fn by(row: &[EnginePerformance], m: Method) -> &EnginePerformance {
    row.iter().find(|p| p.method == m).unwrap()
}

const CD: Method = Method::Sta(StaMethod::Cd);
const LCD: Method = Method::Sta(StaMethod::Lcd);
const IE: Method = Method::Sta(StaMethod::Ie);

fn ordering() -> Outcome {
    let mut points = 0;
    for tau in log_grid(0.6, 50.0, 20) {
        for (ramp, _) in strokes(tau) {
            for s in ramp.samples(401) {
                let Ok(cd) = qstar_cd(&s) else { continue };
                let ie = qstar(StaMethod::Ie, &s).unwrap();
                ensure(cd >= ie - 1e-12 && ie >= 1.0 - 1e-12, || {
                    format!("tau {tau}, t {}: Q*_CD {cd}, Q*_IE {ie}", s.t)
                })?;
                points += 1;
            }
        }
    }
    let rows = sweep_rows(0.5, 50.0, 40)?;
    let mut compared = 0;
    for row in &rows {
        let Some(ie) = by(row, IE).eta else { continue };
        for m in [CD, LCD] {
            if let Some(eta) = by(row, m).eta {
                ensure(ie >= eta - 1e-12, || {
                    format!("tau {}: eta_IE {ie} < eta_{m} {eta}", row[0].tau)
                })?;
                compared += 1;
            }
        }
    }
    ensure(compared > 0, || "no comparable rows".into())?;
    Ok(format!(
        "{points} grid points, {compared} efficiency comparisons"
    ))
}

fn power_suite() -> Outcome {
    let rows = sweep_rows(0.5, 50.0, 40)?;
    let mut shared = 0;
    for row in &rows {
        let tau = row[0].tau;
        let powers: Vec<f64> = [CD, LCD, IE]
            .iter()
            .filter_map(|&m| by(row, m).power)
            .collect();
        ensure(powers.windows(2).all(|w| w[0] == w[1]), || {
            format!("tau {tau}: STA powers differ {powers:?}")
        })?;
        if powers.len() > 1 {
            shared += 1;
        }
        let na = by(row, Method::Nonadiabatic);
        if na.engine_valid {
            let p_na = na.power.unwrap();
            for p in &powers {
                ensure(*p >= p_na, || format!("tau {tau}: P_STA {p} < P_NA {p_na}"))?;
            }
        }
    }
    let ad = cycle(3.0, Method::Adiabatic)?;
    for tau in [0.5, 3.0, 17.0, 50.0] {
        let ratio = power(ad.w1, ad.w3, tau) / power(ad.w1, ad.w3, 2.0 * tau);
        ensure((ratio - 2.0).abs() <= 1e-12, || {
            format!("P(tau)/P(2 tau) = {ratio}")
        })?;
    }
    Ok(format!(
        "{} rows, {shared} with several valid STA powers",
        rows.len()
    ))
}

fn convergence() -> Outcome {
    let mut ratios = Vec::new();
    for m in [CD, LCD, IE] {
        let dev =
            |tau| -> Result<f64, String> { Ok((cycle(tau, m)?.eta.ok_or("no eta")? - 0.68).abs()) };
        let r = dev(100.0)? / dev(200.0)?;
        ensure((r - 4.0).abs() <= 0.2, || {
            format!("{m}: deviation ratio {r}")
        })?;
        ratios.push(format!("{m} {r:.4}"));
    }

    // dense trapezoid oracle for the time-averaged cost
    let quad = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for (ramp, beta) in strokes(3.0) {
        for m in StaMethod::ALL {
            let got = time_avg_cost(m, &ramp, beta, &quad).map_err(|e| e.to_string())?;
            let e0 = initial_mean_energy(ramp.omega_start(), beta).unwrap();
            let n = 1_000_000;
            let h = ramp.tau() / n as f64;
            let f = |i: usize| {
                cost_density(m, &ramp.eval(i as f64 * h).unwrap(), ramp.omega_start(), e0).unwrap()
            };
            let inner: f64 = (1..n).map(f).sum();
            let trap = h * (0.5 * (f(0) + f(n)) + inner) / ramp.tau();
            let rel = ((got - trap) / trap).abs();
            worst = worst.max(rel);
            ensure(rel <= 1e-8, || {
                format!("{m}: quadrature {got} vs trapezoid {trap}")
            })?;
        }
    }

    let cfg = OdeConfig::default();
    for tau in log_grid(0.5, 100.0, 20) {
        for ramp in strokes(tau).map(|(r, _)| r) {
            qstar_na(&ramp, &cfg).map_err(|e| format!("tau {tau}: {e}"))?;
        }
    }
    Ok(format!(
        "deviation ratios {}; quadrature vs trapezoid {worst:.1e}; Richardson ok at 4096 steps",
        ratios.join(", ")
    ))
}

const SCAN: usize = 100_000;

fn scan_time(tau: f64, i: usize) -> f64 {
    if i == SCAN {
        tau
    } else {
        tau * i as f64 / SCAN as f64
    }
}

fn validity_boundaries() -> Outcome {
    let mut cd_points = 0;
    let mut cd_invalid_taus = 0;
    for tau in log_grid(0.5, 10.0, 25) {
        let mut any = false;
        for (ramp, _) in strokes(tau) {
            for i in 0..=SCAN {
                let t = scan_time(tau, i);
                let (w, wd, _) = quintic(tau, if ramp.is_reversed() { tau - t } else { t });
                let broken = wd * wd >= 4.0 * w.powi(4);
                let errs = qstar_cd(&ramp.eval(t).unwrap()).is_err();
                ensure(broken == errs, || {
                    format!("tau {tau}, t {t}: scan says {broken}, evaluation error {errs}")
                })?;
                any |= broken;
                cd_points += 1;
            }
        }
        let p = cycle(tau, CD)?;
        ensure(p.method_valid != any, || {
            format!("CD row at tau {tau} flagged {}", p.method_valid)
        })?;
        cd_invalid_taus += any as usize;
    }

    let mut lcd_flagged = 0;
    let taus = log_grid(0.5, 50.0, 40);
    for &tau in &taus {
        let inverted = (0..=SCAN).any(|i| {
            let (w, wd, wdd) = quintic(tau, scan_time(tau, i));
            w * w - 0.75 * wd * wd / (w * w) + wdd / (2.0 * w) <= 0.0
        });
        let p = cycle(tau, LCD)?;
        ensure(p.method_valid != inverted, || {
            format!(
                "LCD row at tau {tau}: valid = {}, scan inversion = {inverted}",
                p.method_valid
            )
        })?;
        lcd_flagged += inverted as usize;
    }

    let bound = 1.0 / (2.0 * W2);
    for (tau, valid) in [
        (0.3, false),
        (0.45, false),
        (bound, false),
        (bound + 1e-9, true),
        (0.6, true),
    ] {
        let p = cycle(tau, IE)?;
        ensure(p.method_valid == valid, || {
            format!("IE at tau {tau}: valid = {}", p.method_valid)
        })?;
    }
    Ok(format!(
        "CD matched on {cd_points} points ({cd_invalid_taus} invalid taus), {lcd_flagged} LCD rows flagged, IE bound {bound}"
    ))
}

fn ermakov_consistency() -> Outcome {
    let tau = 3.0;
    let ramp = design_ie_frequency(W1, W2, tau).map_err(|e| e.to_string())?;
    let gamma = (W1 / W2).sqrt();
    let cfg = OdeConfig {
        n_steps: 1024,
        ..OdeConfig::default()
    };
    let trace = solve_ermakov_on_ramp(&ramp, 1.0, 0.0, W1, &cfg).map_err(|e| e.to_string())?;
    let b = trace.final_b();
    ensure((b - gamma).abs() <= 1e-6, || {
        format!("b(tau) = {b}, gamma = {gamma}")
    })?;
    let residual = trace.max_residual(|t| ramp.eval(t).unwrap().omega.powi(2));
    let limit = 1e-8 * W1 * W1;
    ensure(residual < limit, || {
        format!("residual {residual:.3e} >= {limit:.3e}")
    })?;
    Ok(format!(
        "|b(tau) - gamma| = {:.1e}, residual {residual:.1e}",
        (b - gamma).abs()
    ))
}

fn determinism() -> Outcome {
    let text = "omega1 = 0.32\nomega2 = 1\nbeta1 = 0.5\nbeta2 = 0.05\n\
                tau_min = 0.5\ntau_max = 50\nn_points = 40\nspacing = log\n";
    let run = |workers: &str| -> Result<(String, Duration), String> {
        let cfg: RunConfig = cli::parse_config(Some(text), &[("workers".into(), workers.into())])
            .map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = cli::cmd_sweep(&cfg).map_err(|e| e.to_string())?;
        Ok((out.body, start.elapsed()))
    };
    let (a, ta) = run("1")?;
    let (b, tb) = run("4")?;
    ensure(a == b, || "outputs differ between 1 and 4 workers".into())?;
    let rows = a.lines().count() - 1;
    ensure(rows == 200, || format!("{rows} rows"))?;
    let slowest = ta.max(tb);
    ensure(slowest < Duration::from_secs(10), || {
        format!("took {slowest:?}")
    })?;
    Ok(format!(
        "{rows} rows byte-identical, 1 worker {ta:?}, 4 workers {tb:?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("adiabatic anchor", adiabatic_anchor),
        ("nonadiabatic limits", nonadiabatic_limits),
        ("boundary normalization", boundary_normalization),
        ("ordering", ordering),
        ("power", power_suite),
        ("convergence", convergence),
        ("validity boundaries", validity_boundaries),
        ("ermakov self-consistency", ermakov_consistency),
        ("end-to-end determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
