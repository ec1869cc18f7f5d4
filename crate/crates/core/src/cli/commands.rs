//! The four subcommands. Each returns the text to emit and an exit status;
//! writing is left to [`write_output`] so the commands stay pure.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ConfigError, OutputFormat, RunConfig, Stroke};
use super::format::{json_num, json_object, json_opt, record_row, sig12, JsonValue, RECORD_HEADER};
use crate::dynamics::{ie_min_duration, qstar_na_trace, DynamicsError};
use crate::engine::{run_cycle, EngineError, EnginePerformance, Method};
use crate::protocol::{make_quintic_ramp, reverse_ramp, RampSpec};
use crate::sta::{
    check_method_validity, cost_density, initial_mean_energy, qstar, StaError, StaMethod,
};

pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 1;
    pub const NON_ENGINE: i32 = 2;
    pub const METHOD_INVALID: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Io { .. } => exit::IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

/// Numerical failures are reported against the config key that controls
/// them, so the user knows what to tighten.
fn numerics_error(e: &EngineError) -> CliError {
    let key = match e {
        EngineError::Numerics(d) | EngineError::Sta(StaError::Numerics(d)) => dynamics_key(d),
        _ => "omega1",
    };
    CliError::Config(ConfigError {
        key: key.to_string(),
        message: e.to_string(),
    })
}

fn dynamics_key(e: &DynamicsError) -> &'static str {
    match e {
        DynamicsError::QuadratureNotConverged { .. } | DynamicsError::NonFinite { .. } => {
            "quad_rel_tol"
        }
        _ => "ode_steps",
    }
}

/// Text produced by a command plus the process exit status and an optional
/// diagnostic for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
    pub note: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            code: exit::OK,
            note: None,
        }
    }
}

pub const TRACE_HEADER: &str = "t,s,omega,domega,ddomega,qstar,cost_density";

fn stroke_ramp(cfg: &RunConfig) -> Result<(RampSpec, f64), CliError> {
    let c = cfg.cycle_config()?;
    let compression = make_quintic_ramp(c.omega1, c.omega2, c.tau).map_err(|e| ConfigError {
        key: "tau".into(),
        message: e.to_string(),
    })?;
    Ok(match cfg.stroke {
        Stroke::Compression => (compression, c.baths.beta_cold),
        Stroke::Expansion => (reverse_ramp(&compression), c.baths.beta_hot),
    })
}

/// Q*(t) and cost density along one stroke, `n_samples` rows.
///
/// A shortcut that breaks down is reported by a trailing `# error:` line and
/// exit status 3. For CD the rows stop at the first sample where the
/// effective frequency is undefined.
pub fn cmd_trace(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let method = cfg.cycle_config()?.method;
    let (ramp, beta) = stroke_ramp(cfg)?;
    let samples = ramp.samples(cfg.n_samples);
    let mut body = String::from(TRACE_HEADER);
    body.push('\n');
    let mut push = |s: &crate::protocol::RampSample, q: f64, c: f64| {
        let row = [s.t, s.s, s.omega, s.domega, s.ddomega, q, c].map(sig12);
        body.push_str(&row.join(","));
        body.push('\n');
    };

    let issue = match method {
        Method::Adiabatic => {
            samples.iter().for_each(|s| push(s, 1.0, 0.0));
            None
        }
        Method::Nonadiabatic => {
            let trace = qstar_na_trace(&ramp, &cfg.numerics().ode, cfg.n_samples)
                .map_err(|e| numerics_error(&EngineError::Numerics(e)))?;
            for (s, (_, q)) in samples.iter().zip(trace) {
                push(s, q, 0.0);
            }
            None
        }
        Method::Sta(sta) => {
            let omega_init = ramp.omega_start();
            let e0 = initial_mean_energy(omega_init, beta).map_err(|e| ConfigError {
                key: "beta1".into(),
                message: e.to_string(),
            })?;
            let mut issue = None;
            for s in &samples {
                match qstar(sta, s).and_then(|q| Ok((q, cost_density(sta, s, omega_init, e0)?))) {
                    Ok((q, c)) => push(s, q, c),
                    Err(e) => {
                        issue = Some(e.to_string());
                        break;
                    }
                }
            }
            issue.or_else(|| trace_issue(sta, &ramp, cfg))
        }
    };

    Ok(match issue {
        None => Outcome::ok(body),
        Some(msg) => {
            body.push_str(&format!("# error: {msg}\n"));
            Outcome {
                body,
                code: exit::METHOD_INVALID,
                note: Some(msg),
            }
        }
    })
}

/// Breakdowns the sample grid may have missed.
fn trace_issue(sta: StaMethod, ramp: &RampSpec, cfg: &RunConfig) -> Option<String> {
    if sta == StaMethod::Ie {
        let bound = ie_min_duration(cfg.omega2?);
        if ramp.tau() <= bound {
            return Some(format!(
                "tau = {} does not exceed 1/(2 omega2) = {bound} (trap inversion)",
                ramp.tau()
            ));
        }
        return None;
    }
    check_method_validity(sta, ramp)
        .err()
        .map(|e| e.to_string())
}

fn record_status(p: &EnginePerformance) -> (i32, Option<String>) {
    if !p.method_valid {
        let msg = p
            .method_issue
            .clone()
            .unwrap_or_else(|| format!("{} is not applicable", p.method));
        (exit::METHOD_INVALID, Some(msg))
    } else if !p.engine_valid {
        (
            exit::NON_ENGINE,
            Some(format!(
                "not an engine: w1 + w3 = {} must be negative and q2 = {} positive",
                p.w1 + p.w3,
                p.q2
            )),
        )
    } else {
        (exit::OK, None)
    }
}

/// One full cycle. Method invalidity (exit 3) takes precedence over a
/// non-engine regime (exit 2); the record is emitted in both cases.
pub fn cmd_cycle(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = cfg.cycle_config()?;
    let p = run_cycle(&c).map_err(|e| numerics_error(&e))?;
    let body = match cfg.format {
        OutputFormat::Csv => format!("{RECORD_HEADER}\n{}\n", record_row(&p)),
        OutputFormat::Json => cycle_json(cfg, &p),
    };
    let (code, note) = record_status(&p);
    Ok(Outcome { body, code, note })
}

/// Inputs are written with shortest round-trip precision so the object can
/// be fed back as configuration; results use 12 significant digits.
fn cycle_json(cfg: &RunConfig, p: &EnginePerformance) -> String {
    let exact = |v: f64| JsonValue::Number(format!("{v:?}"));
    let input = |v: Option<f64>| v.map(exact).unwrap_or(JsonValue::Null);
    json_object(&[
        ("tau", exact(p.tau)),
        ("method", JsonValue::Str(p.method.name().into())),
        ("qstar1", json_num(p.qstar1)),
        ("qstar3", json_num(p.qstar3)),
        ("w1", json_num(p.w1)),
        ("w3", json_num(p.w3)),
        ("q2", json_num(p.q2)),
        ("cost1", json_opt(p.cost1)),
        ("cost3", json_opt(p.cost3)),
        ("eta", json_opt(p.eta)),
        ("power", json_opt(p.power)),
        ("engine_valid", JsonValue::Bool(p.engine_valid)),
        ("method_valid", JsonValue::Bool(p.method_valid)),
        (
            "method_issue",
            p.method_issue
                .clone()
                .map(JsonValue::Str)
                .unwrap_or(JsonValue::Null),
        ),
        ("omega1", input(cfg.omega1)),
        ("omega2", input(cfg.omega2)),
        ("beta1", input(cfg.beta1)),
        ("beta2", input(cfg.beta2)),
        ("quad_rel_tol", exact(cfg.quad_rel_tol)),
        ("ode_steps", JsonValue::Number(cfg.ode_steps.to_string())),
    ])
}

/// Evaluates every (τ, method) pair of `taus × methods` on a dedicated pool,
/// returning records sorted by τ index then method name.
pub fn evaluate_grid(
    cfg: &RunConfig,
    taus: &[f64],
    methods: &[Method],
) -> Result<Vec<(usize, EnginePerformance)>, CliError> {
    let base = cfg.base_cycle()?;
    let mut methods = methods.to_vec();
    methods.sort_by_key(|m| m.name());
    let jobs: Vec<(usize, Method)> = (0..taus.len())
        .flat_map(|i| methods.iter().map(move |&m| (i, m)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError {
            key: "workers".into(),
            message: e.to_string(),
        })?;
    // indexed collect keeps job order, so the worker count cannot affect it
    pool.install(|| {
        jobs.par_iter()
            .map(|&(i, m)| {
                let config = base.with_tau(taus[i]).with_method(m);
                run_cycle(&config).map(|p| (i, p))
            })
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(|e| numerics_error(&e))
}

/// Full record per (τ, method) over the sweep grid. Invalid points are kept
/// with empty fields and their flags cleared.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.sweep_spec(&Method::ALL)?;
    let rows = evaluate_grid(cfg, &spec.taus(), &spec.methods)?;
    let mut body = String::from(RECORD_HEADER);
    body.push('\n');
    for (_, p) in &rows {
        body.push_str(&record_row(p));
        body.push('\n');
    }
    Ok(Outcome::ok(body))
}

pub const PARETO_HEADER: &str = "method,tau,eta,power";

/// Methods compared in the power-efficiency diagram unless `methods` is set.
pub const PARETO_METHODS: [Method; 4] = [
    Method::Nonadiabatic,
    Method::Sta(StaMethod::Cd),
    Method::Sta(StaMethod::Lcd),
    Method::Sta(StaMethod::Ie),
];

/// (η, P) for every engine- and method-valid point, grouped by method and
/// ascending in τ. Without sweep keys the single `tau` is used. An empty
/// result is a header-only file with exit status 2.
pub fn cmd_pareto(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sweep_keys = cfg.tau_min.is_some() || cfg.tau_max.is_some() || cfg.n_points.is_some();
    let (taus, methods) = if sweep_keys || cfg.tau.is_none() {
        let spec = cfg.sweep_spec(&PARETO_METHODS)?;
        (spec.taus(), spec.methods)
    } else {
        let methods = cfg
            .methods
            .clone()
            .unwrap_or_else(|| PARETO_METHODS.to_vec());
        (vec![cfg.tau.unwrap_or_default()], methods)
    };
    let mut rows: Vec<(usize, EnginePerformance)> = evaluate_grid(cfg, &taus, &methods)?
        .into_iter()
        .filter(|(_, p)| p.engine_valid && p.method_valid && p.eta.is_some())
        .collect();
    rows.sort_by(|(i, a), (j, b)| a.method.name().cmp(b.method.name()).then(i.cmp(j)));

    let mut body = String::from(PARETO_HEADER);
    body.push('\n');
    for (_, p) in &rows {
        let fields = [
            p.method.name().to_string(),
            sig12(p.tau),
            sig12(p.eta.unwrap_or_default()),
            sig12(p.power.unwrap_or_default()),
        ];
        body.push_str(&fields.join(","));
        body.push('\n');
    }
    if rows.is_empty() {
        return Ok(Outcome {
            body,
            code: exit::NON_ENGINE,
            note: Some("no engine-valid, method-valid points".into()),
        });
    }
    Ok(Outcome::ok(body))
}

/// Writes `body` to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
