// Zero-point versus thermal Brillouin scattering in water, backscattering
// at 350 nm and room temperature, then across wavelength and temperature.

use std::error::Error;
use std::f64::consts::PI;

use fluctus::medium::builtin_material;
use fluctus::scattering::{ratio_zp_thermal, Polarization, ScatteringConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    let at = |lambda: f64, t: f64| {
        ScatteringConfig::from_wavelength(lambda, PI, Polarization::Perpendicular)?
            .with_temperature(t)
    };
    let r = ratio_zp_thermal(&water, &at(350e-9, 295.0)?)?;
    println!(
        "350 nm, 180°, 295 K: R = {r:.4e} ({:.2}% of the Stokes line)",
        100.0 * r
    );

    println!("\n{:>8}  {:>8}  {:>10}", "λ [nm]", "T [K]", "R");
    for (lambda, t) in [
        (350e-9, 295.0),
        (700e-9, 295.0),
        (350e-9, 590.0),
        (250e-9, 77.0),
    ] {
        let r = ratio_zp_thermal(&water, &at(lambda, t)?)?;
        println!("{:>8.0}  {t:>8.0}  {r:>10.4e}", lambda * 1e9);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
