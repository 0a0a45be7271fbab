//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.
//!
//! Reference values are computed here from the closed forms written out
//! inline, not through the library functions under test.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fluctus::cli::{self, OutputRecord};
use fluctus::correlator::{boundary_image_term, correlator, Separation};
use fluctus::lattice::{convergence_study, STANDARD_SLOPE_BAND, STANDARD_STUDY_NS};
use fluctus::medium::{builtin_material, FluidMedium, C_LIGHT, HBAR, K_B};
use fluctus::scattering::{
    phonon_kinematics, ratio_zp_thermal, zp_cross_section_chain_with_volume,
    zp_cross_section_exact, zp_cross_section_reduced, Polarization, ScatteringConfig,
};
use fluctus::spectral::extrapolated_correlator_default;
use fluctus::verify::standard_cone_ratios;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn water() -> FluidMedium {
    builtin_material("water").unwrap()
}

fn random_medium(rng: &mut ChaCha8Rng) -> FluidMedium {
    FluidMedium::new(
        "random",
        rng.gen_range(500.0..2500.0),
        rng.gen_range(300.0..4000.0),
        rng.gen_range(1.0..2.0),
        rng.gen_range(0.1..2.0),
    )
    .unwrap()
}

fn random_config(rng: &mut ChaCha8Rng) -> ScatteringConfig {
    let pol = [
        Polarization::Perpendicular,
        Polarization::Parallel,
        Polarization::Unpolarized,
    ][rng.gen_range(0..3)];
    ScatteringConfig::new(rng.gen_range(1e14..1e16), rng.gen_range(0.05..PI), pol).unwrap()
}

/// −(ħρ₀/2π²c_S)(r² + 3τ²)/(r² − τ²)³, τ = c_S Δt.
fn reference_correlator(m: &FluidMedium, r: f64, dt: f64) -> f64 {
    let tau = m.sound_speed * dt;
    -(HBAR * m.rho0 / (2.0 * PI * PI * m.sound_speed)) * (r * r + 3.0 * tau * tau)
        / (r * r - tau * tau).powi(3)
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    fluctus::lattice::least_squares_slope(&pts)
}

fn water_benchmark() -> Outcome {
    let args = [
        "fluctus",
        "--format",
        "json",
        "ratio",
        "--material",
        "water",
        "--lambda",
        "350e-9",
        "--theta",
        "180",
        "--temperature",
        "295",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(args, &mut out, &mut err);
    if code != 0 {
        return ok(
            false,
            format!("exit {code}: {}", String::from_utf8_lossy(&err)),
        );
    }
    let records: Vec<OutputRecord> = match serde_json::from_slice(&out) {
        Ok(r) => r,
        Err(e) => return ok(false, format!("unparseable output: {e}")),
    };
    let r = records[0].value;

    let w = water();
    let omega = 2.0 * PI * C_LIGHT / 350e-9;
    let closed = 2.0
        * (HBAR * omega / (2.0 * K_B * 295.0))
        * (w.sound_speed / C_LIGHT)
        * w.refractive_index.powi(4)
        / w.depsilon_drho.powi(2);
    let band = (r - 0.005).abs() <= 0.0015;
    let implementer = ((r - 4.3e-3) / 4.3e-3).abs() <= 0.02;
    let exact = ((r - closed) / closed).abs() <= 1e-12;
    ok(
        band && implementer && exact,
        format!(
            "R = {r:.6e}, |R − 0.005| = {:.2e}, closed form {closed:.6e}",
            (r - 0.005).abs()
        ),
    )
}

fn denominator_resolution() -> Outcome {
    let w = water();
    let r = 1e-9;
    let mut worst: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for k in standard_cone_ratios() {
        let dt = k * r / w.sound_speed;
        let ex = match extrapolated_correlator_default(&w, r, dt) {
            Ok(ex) => ex.value,
            Err(e) => return ok(false, format!("oracle failed at cS|dt|/r = {k}: {e}")),
        };
        let good = reference_correlator(&w, r, dt);
        let tau = w.sound_speed * dt;
        let variant = -(HBAR * w.rho0 / (2.0 * PI * PI * w.sound_speed))
            * (r * r + 3.0 * tau * tau)
            / (r * r - 3.0 * tau * tau).powi(3);
        worst = worst.max(((ex - good) / good).abs());
        gap = gap.max(((ex - variant) / ex).abs());
    }
    ok(
        worst <= 1e-6 && gap > 0.10,
        format!(
            "max rel. error {worst:.2e} (≤ 1e-6), max gap to (r² − 3c²Δt²)³ form {gap:.2e} (> 0.1)"
        ),
    )
}

fn chain_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut worst_v): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let m = random_medium(&mut rng);
        let cfg = random_config(&mut rng);
        let exact = zp_cross_section_exact(&m, &cfg).unwrap().value;
        let v1 = zp_cross_section_chain_with_volume(&m, &cfg, 1.0)
            .unwrap()
            .value;
        let v6 = zp_cross_section_chain_with_volume(&m, &cfg, 1e-6)
            .unwrap()
            .value;
        worst = worst.max(((v1 - exact) / exact).abs());
        worst_v = worst_v.max(((v1 - v6) / v1).abs());
    }
    ok(
        worst <= 1e-12 && worst_v <= 1e-12,
        format!("chain vs exact {worst:.2e}, V-dependence {worst_v:.2e} (both ≤ 1e-12)"),
    )
}

fn reduction_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_margin = f64::INFINITY;
    for _ in 0..100 {
        let m = random_medium(&mut rng);
        let cfg = random_config(&mut rng);
        let reduced = zp_cross_section_reduced(&m, &cfg).unwrap().value;
        let exact = zp_cross_section_exact(&m, &cfg).unwrap().value;
        let kin = phonon_kinematics(&m, &cfg).unwrap();
        let bound = 4.0 * kin.phonon_frequency / kin.omega;
        let dev = (1.0 - reduced / exact).abs();
        worst_margin = worst_margin.min(bound - dev);
    }
    ok(
        worst_margin >= 0.0,
        format!("smallest margin 4Ω/ω − |1 − ratio| = {worst_margin:.2e}"),
    )
}

fn image_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = water();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z = 10f64.powf(rng.gen_range(-10.0..-3.0));
        let image = boundary_image_term(&w, z, z, 0.0, 0.0).unwrap().value;
        let shift = -HBAR * w.rho0 / (32.0 * PI * PI * w.sound_speed * z.powi(4));
        worst = worst.max(((image - shift) / shift).abs());
    }
    ok(
        worst <= 1e-12,
        format!("max rel. error {worst:.2e} (≤ 1e-12)"),
    )
}

fn sign_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for timelike in [false, true] {
        for _ in 0..1000 {
            let m = random_medium(&mut rng);
            let r = 10f64.powf(rng.gen_range(-10.0..0.0));
            let k = if timelike {
                rng.gen_range(1.01..10.0)
            } else {
                rng.gen_range(0.0..0.99)
            };
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let dt = sign * k * r / m.sound_speed;
            let v = correlator(&m, Separation::new(r, dt).unwrap())
                .unwrap()
                .value;
            if (v > 0.0) != timelike {
                bad += 1;
            }
        }
    }
    ok(
        bad == 0,
        format!("{bad} of 2000 separations with the wrong sign"),
    )
}

fn scaling_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut homog: f64 = 0.0;
    for _ in 0..200 {
        let m = random_medium(&mut rng);
        let r = 10f64.powf(rng.gen_range(-10.0..-6.0));
        let k = rng.gen_range(0.0..0.9);
        let dt = k * r / m.sound_speed;
        let lam = 10f64.powf(rng.gen_range(-2.0..2.0));
        let a = correlator(&m, Separation::new(r, dt).unwrap())
            .unwrap()
            .value;
        let b = correlator(&m, Separation::new(lam * r, lam * dt).unwrap())
            .unwrap()
            .value;
        homog = homog.max((b * lam.powi(4) / a - 1.0).abs());
    }

    let w = water();
    let omegas: Vec<f64> = (0..11)
        .map(|i| 2e15 * 10f64.powf(i as f64 / 10.0))
        .collect();
    let at = |omega: f64, t: f64| {
        ScatteringConfig::new(omega, PI, Polarization::Perpendicular)
            .unwrap()
            .with_temperature(t)
            .unwrap()
    };
    let sigma: Vec<f64> = omegas
        .iter()
        .map(|&o| zp_cross_section_exact(&w, &at(o, 295.0)).unwrap().value)
        .collect();
    let s5 = fit_slope(&omegas, &sigma);
    let r_om: Vec<f64> = omegas
        .iter()
        .map(|&o| ratio_zp_thermal(&w, &at(o, 295.0)).unwrap())
        .collect();
    let s_om = fit_slope(&omegas, &r_om);
    let temps: Vec<f64> = (0..11)
        .map(|i| 50.0 * 10f64.powf(i as f64 / 10.0))
        .collect();
    let r_t: Vec<f64> = temps
        .iter()
        .map(|&t| ratio_zp_thermal(&w, &at(5e15, t)).unwrap())
        .collect();
    let s_t = fit_slope(&temps, &r_t);

    let passed = homog <= 1e-12
        && (s5 - 5.0).abs() <= 1e-3
        && (s_om - 1.0).abs() <= 1e-3
        && (s_t + 1.0).abs() <= 1e-3;
    ok(
        passed,
        format!("degree −4 deviation {homog:.1e}; slopes σ~ω {s5:.6}, R~ω {s_om:.6}, R~T {s_t:.6}"),
    )
}

fn lattice_convergence() -> Outcome {
    let study = match convergence_study(&water(), 1e-8, 1.0 / 8.0, &STANDARD_STUDY_NS) {
        Ok(s) => s,
        Err(e) => return ok(false, e.to_string()),
    };
    let (lo, hi) = STANDARD_SLOPE_BAND;
    let errs: Vec<String> = study
        .rows
        .iter()
        .map(|r| format!("N={} {:.2e}", r.modes_per_axis, r.relative_error))
        .collect();
    ok(
        study.strictly_decreasing() && (lo..=hi).contains(&study.slope),
        format!(
            "{}; slope {:.3} in [{lo}, {hi}]",
            errs.join(", "),
            study.slope
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let s = Duration::from_secs;
    let criteria: [Criterion; 8] = [
        ("water benchmark ratio", water_benchmark, s(1)),
        ("denominator resolution", denominator_resolution, s(30)),
        ("golden-rule chain identity", chain_identity, s(1)),
        ("reduction identity", reduction_identity, s(1)),
        ("image/boundary identity", image_identity, s(1)),
        ("sign structure", sign_structure, s(1)),
        ("scaling laws", scaling_laws, s(5)),
        ("lattice convergence", lattice_convergence, s(180)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let in_time = took <= budget;
        let passed = outcome.passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "{} {}. {name}: {} [{:.3} s, limit {} s{}]",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", too slow" },
        );
    }
    println!("{} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
