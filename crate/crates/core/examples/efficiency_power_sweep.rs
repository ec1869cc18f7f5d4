//! Efficiency and power against stroke duration for all methods, written as
//! CSV to the path given as first argument (stdout otherwise).

use std::path::PathBuf;

use sta_otto::cli::{cmd_sweep, parse_config, write_output};

const CONFIG: &str = "\
omega1 = 0.32
omega2 = 1
beta1 = 0.5
beta2 = 0.05
tau_min = 0.5
tau_max = 50
n_points = 40
spacing = log
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    let cfg = parse_config(Some(CONFIG), &[])?;
    let outcome = cmd_sweep(&cfg)?;
    write_output(out.as_deref(), &outcome.body)?;
    Ok(())
}
