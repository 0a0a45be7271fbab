// Rebuilds the correlator from its mode integral: damp the integrand with
// e^{−εq}, integrate numerically at several ε, extrapolate to ε = 0.

use std::error::Error;

use fluctus::correlator::{correlator, three_tau_denominator_correlator, Separation};
use fluctus::medium::builtin_material;
use fluctus::spectral::{extrapolated_correlator_default, RegulatorSchedule};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    let r = 1e-9;
    println!(
        "{:>6}  {:>14}  {:>14}  {:>9}  {:>14}",
        "cΔt/r", "oracle", "closed form", "rel. err", "(r²−3c²Δt²)³"
    );
    for k in [0.0, 0.3, 0.6, 0.9, 1.2, 2.0, 3.0] {
        let dt = k * r / water.sound_speed;
        let sep = Separation::new(r, dt)?;
        let ex = extrapolated_correlator_default(&water, r, dt)?;
        let closed = correlator(&water, sep)?.value;
        let err = ((ex.value - closed) / closed).abs();
        println!(
            "{k:>6.2}  {:>14.8e}  {closed:>14.8e}  {err:>9.1e}  {:>14.6e}",
            ex.value,
            three_tau_denominator_correlator(&water, sep)
        );
    }

    let sched = RegulatorSchedule::for_separation(&water, r, 0.0)?;
    let ex = extrapolated_correlator_default(&water, r, 0.0)?;
    println!("\nregulated values at dt = 0:");
    for v in &ex.regulated {
        println!("  ε = {:.4e} m  →  {:.10e}", v.eps, v.value);
    }
    println!(
        "extrapolation order {}, estimate ±{:.1e}",
        sched.extrap_order(),
        ex.error_estimate
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
