//! Power-efficiency pairs of the valid points, and for each method the point
//! of maximum power.

use sta_otto::cli::{cmd_pareto, parse_config};

const CONFIG: &str = "\
omega1 = 0.32
omega2 = 1
beta1 = 0.5
beta2 = 0.05
tau_min = 0.5
tau_max = 50
n_points = 60
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outcome = cmd_pareto(&parse_config(Some(CONFIG), &[])?)?;
    print!("{}", outcome.body);

    let mut best: Vec<(String, f64, f64, f64)> = Vec::new();
    for line in outcome.body.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (tau, eta, power) = (f[1].parse()?, f[2].parse()?, f[3].parse()?);
        match best.iter_mut().find(|b| b.0 == f[0]) {
            Some(b) if power > b.3 => *b = (f[0].to_string(), tau, eta, power),
            Some(_) => {}
            None => best.push((f[0].to_string(), tau, eta, power)),
        }
    }
    eprintln!("\nmaximum power per method:");
    for (m, tau, eta, power) in best {
        eprintln!("{m:>4}: P = {power:.4} at tau = {tau:.4}, eta = {eta:.4}");
    }
    Ok(())
}
