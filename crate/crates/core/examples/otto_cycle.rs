//! One Otto cycle for every driving method at a chosen stroke duration.

use sta_otto::engine::{run_cycle, BathPair, CycleConfig, Method, Numerics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tau: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(3.0);
    let base = CycleConfig {
        omega1: 0.32,
        omega2: 1.0,
        baths: BathPair::new(0.5, 0.05)?,
        tau,
        method: Method::Adiabatic,
        numerics: Numerics::default(),
    };
    let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6}"));
    println!("tau = {tau}");
    println!(
        "{:>4} {:>9} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9}",
        "", "Q*1", "W1", "W3", "Q2", "cost", "eta", "power"
    );
    for method in Method::ALL {
        let p = run_cycle(&base.with_method(method))?;
        let cost = p.cost1.zip(p.cost3).map(|(a, b)| a + b);
        println!(
            "{:>4} {:9.6} {:10.6} {:10.6} {:10.6} {:>9} {:>9} {:>9}",
            method.name(),
            p.qstar1,
            p.w1,
            p.w3,
            p.q2,
            show(cost),
            show(p.eta),
            show(p.power)
        );
        if let Some(issue) = &p.method_issue {
            println!("     {issue}");
        }
    }
    Ok(())
}
