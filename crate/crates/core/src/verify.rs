//! Cross-checks between the closed forms and the numerical oracles.
//!
//! Each suite returns one [`Check`] per property with the tolerance it was
//! held to and the worst error observed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlator::{correlator, three_tau_denominator_correlator, Separation};
use crate::error::Result;
use crate::lattice::{convergence_study, STANDARD_SLOPE_BAND, STANDARD_STUDY_NS};
use crate::medium::{builtin_material, FluidMedium};
use crate::scattering::{
    zp_cross_section_chain_with_volume, zp_cross_section_exact, Polarization, ScatteringConfig,
};
use crate::spectral::extrapolated_correlator_default;

pub const CHAIN_TOLERANCE: f64 = 1e-12;
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;
/// Minimum relative gap the spectral oracle must show against the
/// `(r² − 3c_S²Δt²)³` variant somewhere on the grid.
pub const THREE_TAU_MIN_GAP: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Spectral,
    Lattice,
    Chain,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Human-readable statement of the pass condition.
    pub criterion: String,
    pub achieved: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, achieved: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            criterion: format!("≤ {tol:e}"),
            achieved,
            passed: achieved <= tol,
        }
    }

    fn at_least(name: &str, achieved: f64, min: f64) -> Self {
        Self {
            name: name.to_string(),
            criterion: format!("> {min:e}"),
            achieved,
            passed: achieved > min,
        }
    }
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::Spectral => spectral_suite(),
        Suite::Lattice => lattice_suite(),
        Suite::Chain => chain_suite(),
        Suite::All => {
            let mut out = chain_suite()?;
            out.extend(spectral_suite()?);
            out.extend(lattice_suite()?);
            Ok(out)
        }
    }
}

/// c_S|Δt|/r for the standard 40-point grid: 20 spacelike points in
/// [0.1, 0.95] and 20 timelike points in [1.05, 3].
pub fn standard_cone_ratios() -> Vec<f64> {
    let lin =
        |a: f64, b: f64, n: usize| (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64);
    lin(0.1, 0.95, 20).chain(lin(1.05, 3.0, 20)).collect()
}

fn random_medium(rng: &mut ChaCha8Rng) -> FluidMedium {
    FluidMedium::new(
        "random",
        rng.gen_range(100.0..3000.0),
        rng.gen_range(100.0..5000.0),
        rng.gen_range(1.0..2.5),
        rng.gen_range(0.05..3.0),
    )
    .expect("sampled medium is valid")
}

pub fn chain_suite() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_identity: f64 = 0.0;
    let mut worst_volume: f64 = 0.0;
    let mut crossed_max: f64 = 0.0;
    for _ in 0..100 {
        let m = random_medium(&mut rng);
        let cfg = ScatteringConfig::new(
            rng.gen_range(1e14..2e16),
            rng.gen_range(0.01..PI),
            [
                Polarization::Perpendicular,
                Polarization::Parallel,
                Polarization::Unpolarized,
            ][rng.gen_range(0..3)],
        )?;
        let exact = zp_cross_section_exact(&m, &cfg)?.value;
        let big = zp_cross_section_chain_with_volume(&m, &cfg, 1.0)?.value;
        let small = zp_cross_section_chain_with_volume(&m, &cfg, 1e-6)?.value;
        worst_identity = worst_identity.max(((big - exact) / exact).abs());
        worst_volume = worst_volume.max(((big - small) / big).abs());

        let crossed = ScatteringConfig {
            polarization: Polarization::Crossed,
            ..cfg
        };
        crossed_max = crossed_max.max(zp_cross_section_chain_with_volume(&m, &crossed, 1.0)?.value);
    }
    Ok(vec![
        Check::at_most(
            "golden-rule chain = exact cross section (100 configs)",
            worst_identity,
            CHAIN_TOLERANCE,
        ),
        Check::at_most(
            "chain independent of box volume (1e-6, 1 m³)",
            worst_volume,
            CHAIN_TOLERANCE,
        ),
        Check::at_most("crossed polarization gives zero", crossed_max, 0.0),
    ])
}

pub fn spectral_suite() -> Result<Vec<Check>> {
    let water = builtin_material("water")?;
    let r = 1e-9;
    let rows = standard_cone_ratios()
        .into_par_iter()
        .map(|k| {
            let dt = k * r / water.sound_speed;
            let ex = extrapolated_correlator_default(&water, r, dt)?;
            let sep = Separation::new(r, dt)?;
            let closed = correlator(&water, sep)?.value;
            let variant = three_tau_denominator_correlator(&water, sep);
            Ok((
                ((ex.value - closed) / closed).abs(),
                ((ex.value - variant) / ex.value).abs(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let gap = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(vec![
        Check::at_most(
            "mode integral = closed-form correlator (40-point grid)",
            worst,
            SPECTRAL_TOLERANCE,
        ),
        Check::at_least(
            "mode integral rejects the (r² − 3c²Δt²)³ variant",
            gap,
            THREE_TAU_MIN_GAP,
        ),
    ])
}

pub fn lattice_suite() -> Result<Vec<Check>> {
    let water = builtin_material("water")?;
    let study = convergence_study(&water, 1e-8, 1.0 / 8.0, &STANDARD_STUDY_NS)?;
    let (lo, hi) = STANDARD_SLOPE_BAND;
    let mut checks = vec![Check {
        name: "lattice error decreases with N (64, 128, 256)".into(),
        criterion: "strictly decreasing".into(),
        achieved: study
            .rows
            .last()
            .map(|r| r.relative_error)
            .unwrap_or(f64::NAN),
        passed: study.strictly_decreasing(),
    }];
    checks.push(Check {
        name: "log-log slope of error vs a/r".into(),
        criterion: format!("in [{lo}, {hi}]"),
        achieved: study.slope,
        passed: (lo..=hi).contains(&study.slope),
    });
    Ok(checks)
}
