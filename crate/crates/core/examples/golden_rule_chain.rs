// Assembles the zero-point scattering cross section step by step from the
// matrix element, final density of states and incident flux, and compares
// it with the closed forms.

use std::error::Error;
use std::f64::consts::PI;

use fluctus::medium::{builtin_material, HBAR};
use fluctus::scattering::{
    density_of_states, incident_flux, matrix_element_sq, phonon_kinematics, zp_cross_section_chain,
    zp_cross_section_exact, zp_cross_section_reduced, Polarization, ScatteringConfig,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    let cfg = ScatteringConfig::from_wavelength(532e-9, PI / 2.0, Polarization::Perpendicular)?;
    let kin = phonon_kinematics(&water, &cfg)?;
    println!(
        "ω = {:.6e} rad/s, ω′ = {:.6e}, Ω_q = {:.6e}, q = {:.4e} 1/m",
        kin.omega, kin.omega_prime, kin.phonon_frequency, kin.q
    );

    let v = 1e-6;
    let m2 = matrix_element_sq(
        &water,
        kin.omega,
        kin.omega_prime,
        kin.phonon_frequency,
        v,
        1.0,
    );
    let rho = density_of_states(kin.omega_prime, water.epsilon0, v);
    let flux = incident_flux(water.epsilon0, v);
    let rate = 2.0 * PI / HBAR * m2 * rho;
    println!("V = {v:e} m³: |M|² = {m2:.4e} J², ρ_f = {rho:.4e} 1/(J·sr), Γ = {rate:.4e} 1/(s·sr)");
    println!("dσ/dΩ / V = {:.6e} 1/(m·sr)", rate / flux / v);

    let chain = zp_cross_section_chain(&water, &cfg)?.value;
    let exact = zp_cross_section_exact(&water, &cfg)?.value;
    let reduced = zp_cross_section_reduced(&water, &cfg)?.value;
    println!("chain   {chain:.12e}\nexact   {exact:.12e}\nω⁵ form {reduced:.12e}");
    if ((chain - exact) / exact).abs() > 1e-12 {
        return Err("chain and closed form disagree".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
