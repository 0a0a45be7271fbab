// Reduction of density fluctuations near a rigid wall, next to the
// electromagnetic analog at a perfect mirror.

use std::error::Error;

use fluctus::correlator::{boundary_correlator, boundary_shift_planar, em_vacuum_shift_plate};
use fluctus::medium::{builtin_material, C_LIGHT, HBAR};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    println!(
        "{:>10}  {:>16}  {:>14}",
        "z [m]", "<δρ²> [kg²/m⁶]", "<E²> [J/m³]"
    );
    for z in [1e-9, 2e-9, 5e-9, 1e-8, 1e-7] {
        let shift = boundary_shift_planar(&water, z)?.value;
        let (e2, _) = em_vacuum_shift_plate(z)?;
        println!("{z:>10.1e}  {shift:>16.6e}  {:>14.6e}", e2 * HBAR * C_LIGHT);
    }

    // Two points at the same height: the wall adds a positive-sign image.
    let b = boundary_correlator(&water, 2e-9, 2e-9, 3e-9, 0.0)?;
    println!(
        "z = 2 nm, 3 nm apart: direct {:.4e}, image {:.4e}, total {:.4e}",
        b.direct.value, b.image.value, b.total
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
