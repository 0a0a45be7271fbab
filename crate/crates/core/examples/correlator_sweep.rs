// Equal-time and unequal-time density correlator of water, swept across
// the sound cone at fixed time lag.

use std::error::Error;

use fluctus::correlator::{correlator, Regime, Separation};
use fluctus::medium::builtin_material;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    let dt = 1e-12;
    let cone = water.sound_speed * dt;
    println!("sound cone at dt = {dt:e} s: r = {cone:e} m");
    println!(
        "{:>12}  {:>10}  {:>14}",
        "r [m]", "regime", "<δρδρ> [kg²/m⁶]"
    );
    for i in 0..12 {
        let r = 0.5e-9 * 1.25f64.powi(i);
        let sep = Separation::new(r, dt)?;
        let regime = sep.regime(water.sound_speed);
        if regime == Regime::OnCone {
            continue;
        }
        let v = correlator(&water, sep)?.value;
        let expect_positive = regime == Regime::Timelike;
        if (v > 0.0) != expect_positive {
            return Err(format!("wrong sign at r = {r:e}").into());
        }
        println!("{r:>12.4e}  {:>10}  {v:>14.6e}", format!("{regime:?}"));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
