use std::f64::consts::PI;

use rayon::prelude::*;

use super::materials::resolve;
use super::output::{OutputRecord, Quantity};
use super::sweep::Sweep;
use super::{CorrelatorArgs, LightArgs, Outcome, RatioArgs, XsKind, XsectionArgs};
use crate::correlator::{
    boundary_correlator, boundary_shift_planar, correlator, em_vacuum_shift_plate, Separation,
};
use crate::error::{Error, Result};
use crate::medium::{FluidMedium, C_LIGHT, HBAR};
use crate::scattering::{
    omega_from_wavelength, ratio_zp_thermal, thermal_brillouin_cross_section,
    thermal_total_cross_section, zp_cross_section_chain, zp_cross_section_exact,
    zp_cross_section_reduced, CrossSectionValue, ScatteringConfig,
};
use crate::spectral::extrapolated_correlator_default;
use crate::verify::{self, Suite};

const DENSITY2: &str = "kg²/m⁶";

/// Evaluates `f` on every point in parallel and concatenates the records in
/// input order.
fn sweep_records<P, F>(points: Vec<P>, f: F) -> Result<Vec<OutputRecord>>
where
    P: Send + Sync,
    F: Fn(&P) -> Result<Vec<OutputRecord>> + Send + Sync,
{
    let per_point = points.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

fn record(
    inputs: Vec<Quantity>,
    value: f64,
    unit: &str,
    formula: &str,
    provenance: &str,
) -> OutputRecord {
    OutputRecord {
        inputs,
        value,
        unit: unit.into(),
        formula: formula.into(),
        provenance: provenance.into(),
    }
}

fn product(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .collect()
}

pub(crate) fn correlator_cmd(a: CorrelatorArgs) -> Result<Outcome> {
    let (m, _) = resolve(&a.material)?;
    let dt = a.dt;
    let mat = Quantity::text("material", &m.name);
    let records = match (&a.r, &a.boundary) {
        (None, None) => {
            return Err(Error::InvalidArgument(
                "give --r, --boundary, or both".into(),
            ))
        }
        (Some(r), None) => sweep_records(r.points().to_vec(), |&r| {
            let inputs = vec![
                mat.clone(),
                Quantity::number("r", r, "m"),
                Quantity::number("dt", dt, "s"),
            ];
            let v = correlator(&m, Separation::new(r, dt)?)?;
            let mut out = vec![record(
                inputs.clone(),
                v.value,
                DENSITY2,
                v.formula.tag(),
                "closed-form",
            )];
            if a.oracle {
                let ex = extrapolated_correlator_default(&m, r, dt)?;
                out.push(record(
                    inputs,
                    ex.value,
                    DENSITY2,
                    v.formula.tag(),
                    "spectral-oracle",
                ));
            }
            Ok(out)
        })?,
        (None, Some(z)) => {
            if a.oracle {
                return Err(Error::InvalidArgument(
                    "--oracle applies to the free-space correlator only".into(),
                ));
            }
            sweep_records(z.points().to_vec(), |&z| {
                let shift = boundary_shift_planar(&m, z)?;
                let (e2, b2) = em_vacuum_shift_plate(z)?;
                let inputs = |q: &str| {
                    vec![
                        mat.clone(),
                        Quantity::number("z", z, "m"),
                        Quantity::text("quantity", q),
                    ]
                };
                // 3/(16π²z⁴) times ħc is an energy density.
                Ok(vec![
                    record(
                        inputs("<δρ²>"),
                        shift.value,
                        DENSITY2,
                        shift.formula.tag(),
                        "closed-form",
                    ),
                    record(
                        inputs("<E²>"),
                        e2 * HBAR * C_LIGHT,
                        "J/m³",
                        "em-plate-shift",
                        "closed-form",
                    ),
                    record(
                        inputs("<B²>"),
                        b2 * HBAR * C_LIGHT,
                        "J/m³",
                        "em-plate-shift",
                        "closed-form",
                    ),
                ])
            })?
        }
        (Some(r), Some(z)) => {
            if a.oracle {
                return Err(Error::InvalidArgument(
                    "--oracle applies to the free-space correlator only".into(),
                ));
            }
            sweep_records(product(z.points(), r.points()), |&(z, r)| {
                let b = boundary_correlator(&m, z, z, r, dt)?;
                Ok(vec![record(
                    vec![
                        mat.clone(),
                        Quantity::number("z", z, "m"),
                        Quantity::number("r", r, "m"),
                        Quantity::number("dt", dt, "s"),
                    ],
                    b.total,
                    DENSITY2,
                    b.image.formula.tag(),
                    "closed-form",
                )])
            })?
        }
    };
    Ok(Outcome::Records(records))
}

/// (name, value, unit) of the light input and the ω values it implies.
fn light_points(l: &LightArgs) -> Result<Vec<(Quantity, f64)>> {
    match (&l.lambda, &l.omega) {
        (Some(lam), None) => lam
            .points()
            .iter()
            .map(|&x| {
                if x > 0.0 {
                    Ok((Quantity::number("lambda", x, "m"), omega_from_wavelength(x)))
                } else {
                    Err(Error::InvalidArgument(format!(
                        "wavelength must be > 0, got {x}"
                    )))
                }
            })
            .collect(),
        (None, Some(om)) => Ok(om
            .points()
            .iter()
            .map(|&x| (Quantity::number("omega", x, "rad/s"), x))
            .collect()),
        _ => Err(Error::InvalidArgument(
            "give exactly one of --lambda, --omega".into(),
        )),
    }
}

/// Degrees to radians with 180° mapping exactly onto π.
fn radians(deg: f64) -> f64 {
    deg / 180.0 * PI
}

fn temperatures(t: &Option<Sweep>) -> Vec<Option<f64>> {
    match t {
        Some(s) => s.points().iter().map(|&x| Some(x)).collect(),
        None => vec![None],
    }
}

struct LightPoint {
    light: Quantity,
    omega: f64,
    theta_deg: f64,
    temperature: Option<f64>,
}

fn light_grid(l: &LightArgs, theta: &Sweep, t: &Option<Sweep>) -> Result<Vec<LightPoint>> {
    let mut pts = Vec::new();
    for (light, omega) in light_points(l)? {
        for &theta_deg in theta.points() {
            for temperature in temperatures(t) {
                pts.push(LightPoint {
                    light: light.clone(),
                    omega,
                    theta_deg,
                    temperature,
                });
            }
        }
    }
    Ok(pts)
}

fn config(p: &LightPoint, pol: crate::scattering::Polarization) -> Result<ScatteringConfig> {
    let cfg = ScatteringConfig::new(p.omega, radians(p.theta_deg), pol)?;
    match p.temperature {
        Some(t) => cfg.with_temperature(t),
        None => Ok(cfg),
    }
}

fn temperature_of(p: &LightPoint, m: &FluidMedium) -> f64 {
    p.temperature.unwrap_or(m.default_temperature)
}

pub(crate) fn xsection(a: XsectionArgs) -> Result<Outcome> {
    let (m, _) = resolve(&a.material)?;
    if !(a.volume > 0.0) || !a.volume.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "volume must be finite and > 0, got {}",
            a.volume
        )));
    }
    let grid = light_grid(&a.light, &a.theta, &a.temperature)?;
    let records = sweep_records(grid, |p| {
        let cfg = config(p, a.pol)?.with_in_medium_kinematics(a.in_medium);
        let (v, provenance): (CrossSectionValue, _) = match a.kind {
            XsKind::Zp => (zp_cross_section_reduced(&m, &cfg)?, "closed-form"),
            XsKind::ZpExact => (zp_cross_section_exact(&m, &cfg)?, "closed-form"),
            XsKind::ZpChain => (zp_cross_section_chain(&m, &cfg)?, "golden-rule-chain"),
            XsKind::ThermalBrillouin => (thermal_brillouin_cross_section(&m, &cfg)?, "closed-form"),
            XsKind::ThermalTotal => (thermal_total_cross_section(&m, &cfg)?, "closed-form"),
        };
        let mut inputs = vec![
            Quantity::text("material", &m.name),
            p.light.clone(),
            Quantity::number("theta", p.theta_deg, "deg"),
            Quantity::text("pol", a.pol.name()),
        ];
        if matches!(a.kind, XsKind::ThermalBrillouin | XsKind::ThermalTotal) {
            inputs.push(Quantity::number("T", temperature_of(p, &m), "K"));
        }
        inputs.push(Quantity::number("volume", a.volume, "m³"));
        Ok(vec![record(
            inputs,
            v.value * a.volume,
            "m²/sr",
            v.formula.tag(),
            provenance,
        )])
    })?;
    Ok(Outcome::Records(records))
}

pub(crate) fn ratio(a: RatioArgs) -> Result<Outcome> {
    let (m, _) = resolve(&a.material)?;
    let grid = light_grid(&a.light, &a.theta, &a.temperature)?;
    let records = sweep_records(grid, |p| {
        let cfg = config(p, crate::scattering::Polarization::Perpendicular)?;
        let r = ratio_zp_thermal(&m, &cfg)?;
        let inputs = |q: &str| {
            vec![
                Quantity::text("material", &m.name),
                p.light.clone(),
                Quantity::number("theta", p.theta_deg, "deg"),
                Quantity::number("T", temperature_of(p, &m), "K"),
                Quantity::text("quantity", q),
            ]
        };
        Ok(vec![
            record(
                inputs("zero-point/thermal Brillouin"),
                r,
                "1",
                "zero-point-thermal-ratio",
                "closed-form",
            ),
            record(
                inputs("share of Stokes line"),
                100.0 * r,
                "%",
                "zero-point-thermal-ratio",
                "closed-form",
            ),
        ])
    })?;
    Ok(Outcome::Records(records))
}

pub(crate) fn verify(suite: Suite) -> Result<Outcome> {
    let checks = verify::run(suite)?;
    let passed = checks.iter().all(|c| c.passed);
    let records = checks
        .into_iter()
        .map(|c| {
            record(
                vec![
                    Quantity::text("check", &c.name),
                    Quantity::text("criterion", &c.criterion),
                    Quantity::text("status", if c.passed { "PASS" } else { "FAIL" }),
                ],
                c.achieved,
                "1",
                "verification",
                "oracle",
            )
        })
        .collect();
    Ok(Outcome::Verify(records, passed))
}
