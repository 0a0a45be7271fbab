// Finite-box mode sum against the continuum integral at the same damping,
// for the standard study geometry (L = 16 r, ε = r/8).

use std::error::Error;

use fluctus::lattice::{convergence_study, STANDARD_SLOPE_BAND, STANDARD_STUDY_NS};
use fluctus::medium::builtin_material;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let water = builtin_material("water")?;
    let study = convergence_study(&water, 1e-8, 1.0 / 8.0, &STANDARD_STUDY_NS)?;
    println!(
        "{:>5}  {:>7}  {:>16}  {:>16}  {:>9}",
        "N", "a/r", "lattice", "continuum", "rel. err"
    );
    for row in &study.rows {
        println!(
            "{:>5}  {:>7.4}  {:>16.9e}  {:>16.9e}  {:>9.2e}",
            row.modes_per_axis, row.spacing_over_r, row.lattice, row.continuum, row.relative_error
        );
    }
    let (lo, hi) = STANDARD_SLOPE_BAND;
    println!(
        "fitted slope {:.3} (accepted range [{lo}, {hi}])",
        study.slope
    );
    if !study.strictly_decreasing() {
        return Err("error did not decrease with N".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
