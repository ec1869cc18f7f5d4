//! Q*(t) along a compression stroke with omega1/omega2 = 0.15 for every
//! shortcut and for the plain ramp.

use sta_otto::dynamics::{qstar_na_trace, OdeConfig};
use sta_otto::protocol::make_quintic_ramp;
use sta_otto::sta::{qstar, StaMethod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tau: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(12.0);
    let ramp = make_quintic_ramp(0.15, 1.0, tau)?;
    let n = 21;
    let na = qstar_na_trace(&ramp, &OdeConfig::default(), n)?;

    println!("tau = {tau}");
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "t", "CD", "LCD", "IE", "NA"
    );
    for (s, (_, q_na)) in ramp.samples(n).iter().zip(na) {
        let cell = |m| match qstar(m, s) {
            Ok(q) => format!("{q:12.6}"),
            Err(_) => format!("{:>12}", "undefined"),
        };
        println!(
            "{:8.3} {} {} {} {q_na:12.6}",
            s.t,
            cell(StaMethod::Cd),
            cell(StaMethod::Lcd),
            cell(StaMethod::Ie)
        );
    }
    Ok(())
}
