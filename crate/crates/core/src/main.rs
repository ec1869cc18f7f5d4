use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sta_otto::cli::{self, exit, CliError, ConfigError};

#[derive(Parser)]
#[command(
    name = "sta-otto",
    version,
    about = "Finite-time quantum Otto engine with shortcuts to adiabaticity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    keys: Keys,
    /// key = value configuration file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Q*(t) and cost density along one stroke
    Trace,
    /// One cycle record
    Cycle,
    /// Records over a τ grid for every method
    Sweep,
    /// Efficiency and power of the valid points
    Pareto,
}

/// Every config key as an optional flag. Values are kept as text and parsed
/// together with the file so errors read the same either way.
#[derive(Args)]
#[command(rename_all = "snake_case")]
struct Keys {
    #[arg(long, global = true)]
    omega1: Option<String>,
    #[arg(long, global = true)]
    omega2: Option<String>,
    #[arg(long, global = true)]
    beta1: Option<String>,
    #[arg(long, global = true)]
    beta2: Option<String>,
    #[arg(long, global = true)]
    tau: Option<String>,
    /// AD, NA, CD, LCD or IE
    #[arg(long, global = true)]
    method: Option<String>,
    #[arg(long, global = true, alias = "tau-min")]
    tau_min: Option<String>,
    #[arg(long, global = true, alias = "tau-max")]
    tau_max: Option<String>,
    #[arg(long, global = true, alias = "n-points")]
    n_points: Option<String>,
    /// linear or log
    #[arg(long, global = true)]
    spacing: Option<String>,
    /// Comma-separated method list, or "all"
    #[arg(long, global = true)]
    methods: Option<String>,
    #[arg(long, global = true, alias = "quad-rel-tol")]
    quad_rel_tol: Option<String>,
    #[arg(long, global = true, alias = "ode-steps")]
    ode_steps: Option<String>,
    #[arg(long, global = true, alias = "n-samples")]
    n_samples: Option<String>,
    /// compression or expansion
    #[arg(long, global = true)]
    stroke: Option<String>,
    #[arg(long, global = true)]
    workers: Option<String>,
    /// json or csv
    #[arg(long, global = true)]
    format: Option<String>,
}

impl Keys {
    fn overrides(&self) -> Vec<(String, String)> {
        [
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("beta1", &self.beta1),
            ("beta2", &self.beta2),
            ("tau", &self.tau),
            ("method", &self.method),
            ("tau_min", &self.tau_min),
            ("tau_max", &self.tau_max),
            ("n_points", &self.n_points),
            ("spacing", &self.spacing),
            ("methods", &self.methods),
            ("quad_rel_tol", &self.quad_rel_tol),
            ("ode_steps", &self.ode_steps),
            ("n_samples", &self.n_samples),
            ("stroke", &self.stroke),
            ("workers", &self.workers),
            ("format", &self.format),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
        .collect()
    }
}

fn run(args: Cli) -> Result<i32, CliError> {
    let text = match &args.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(ConfigError {
                key: "config".into(),
                message: format!("{}: {e}", path.display()),
            })
        })?),
        None => None,
    };
    let cfg = cli::parse_config(text.as_deref(), &args.keys.overrides())?;
    let outcome = match args.command {
        Command::Trace => cli::cmd_trace(&cfg)?,
        Command::Cycle => cli::cmd_cycle(&cfg)?,
        Command::Sweep => cli::cmd_sweep(&cfg)?,
        Command::Pareto => cli::cmd_pareto(&cfg)?,
    };
    cli::write_output(args.out.as_deref(), &outcome.body)?;
    if let Some(note) = outcome.note {
        eprintln!("sta-otto: {note}");
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::CONFIG as u8
            } else {
                0
            });
        }
    };
    let code = run(args).unwrap_or_else(|e| {
        eprintln!("sta-otto: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
