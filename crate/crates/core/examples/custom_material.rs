// Loads a material file and computes the quantities that need its optional
// thermal data.

use std::error::Error;
use std::f64::consts::PI;

use fluctus::medium::load_material;
use fluctus::scattering::{
    ratio_zp_thermal, thermal_terms, thermal_total_cross_section, zp_cross_section_exact,
    Polarization, ScatteringConfig,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ethanol.mat");
    let ethanol = load_material(path)?;
    print!("{}", ethanol.to_material_file());

    let cfg = ScatteringConfig::from_wavelength(488e-9, PI / 2.0, Polarization::Unpolarized)?;
    let terms = thermal_terms(&ethanol, &cfg)?;
    println!(
        "Rayleigh / Brillouin intensity = {:.3}",
        terms.rayleigh / terms.brillouin
    );
    println!(
        "thermal total {:.4e}, zero-point {:.4e} 1/(m·sr), R = {:.3e}",
        thermal_total_cross_section(&ethanol, &cfg)?.value,
        zp_cross_section_exact(&ethanol, &cfg)?.value,
        ratio_zp_thermal(&ethanol, &cfg)?,
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
