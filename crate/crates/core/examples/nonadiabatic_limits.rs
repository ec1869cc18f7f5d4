//! Q*_NA for the 0.32 -> 1 quintic ramp from the sudden quench to the
//! adiabatic limit.

use sta_otto::dynamics::{qstar_na_detailed, OdeConfig};
use sta_otto::protocol::make_quintic_ramp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (wi, wf) = (0.32_f64, 1.0_f64);
    println!(
        "sudden limit (wi^2 + wf^2) / (2 wi wf) = {}",
        (wi * wi + wf * wf) / (2.0 * wi * wf)
    );
    println!("{:>8} {:>16} {:>12}", "tau", "Q*_NA", "wronskian+1");
    for tau in [1e-4, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0] {
        let ramp = make_quintic_ramp(wi, wf, tau)?;
        let (q, sol) = qstar_na_detailed(&ramp, &OdeConfig::default())?;
        println!("{tau:8} {q:16.12} {:12.1e}", sol.wronskian() + 1.0);
    }
    Ok(())
}
