//! The quintic frequency ramp, its time reversal, and the boundary report for
//! ramps designed from a scaling function.

use sta_otto::dynamics::design_ie_frequency_with;
use sta_otto::protocol::{
    check_boundary_conditions, make_quintic_ramp, reverse_ramp, ScalingProfile,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let compression = make_quintic_ramp(0.32, 1.0, 3.0)?;
    let expansion = reverse_ramp(&compression);

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "t", "omega", "domega", "ddomega", "omega_exp"
    );
    for s in compression.samples(11) {
        let e = expansion.eval(s.t)?;
        println!(
            "{:6.2} {:10.6} {:10.6} {:10.6} {:10.6}",
            s.t, s.omega, s.domega, s.ddomega, e.omega
        );
    }

    println!(
        "\nboundary report, quintic ramp: {:?}",
        check_boundary_conditions(&compression, 1e-12)
    );
    for (profile, tau) in [(ScalingProfile::Quintic, 3.0), (ScalingProfile::Nonic, 4.0)] {
        let ramp = design_ie_frequency_with(profile, 0.32, 1.0, tau)?;
        println!(
            "boundary report, {profile:?} scaling at tau {tau}: {:?}",
            check_boundary_conditions(&ramp, 1e-9)
        );
    }
    match design_ie_frequency_with(ScalingProfile::Nonic, 0.32, 1.0, 3.0) {
        Ok(_) => println!("Nonic scaling at tau 3 is feasible"),
        Err(e) => println!("Nonic scaling at tau 3: {e}"),
    }
    Ok(())
}
