//! Closed-form density correlators of the phonon vacuum.
//!
//! For a fluid with linear dispersion Ω = c_S q the two-point function of the
//! density deviation is
//!
//! ```text
//! <ρ(x,t) ρ(x',t')> = -(ħ ρ₀ / 2π² c_S) (r² + 3 c_S² Δt²) / (r² - c_S² Δt²)³
//! ```
//!
//! with r = |x - x'|. It is negative (anticorrelated) outside the sound cone
//! and positive inside. A variant with `3 c_S² Δt²` in the denominator is
//! kept as [`three_tau_denominator_correlator`] for comparison only; direct
//! evaluation of the spectral integral (see [`crate::spectral`]) rules it out.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::medium::{FluidMedium, HBAR};

/// Relative width of the band around |r| = c|Δt| treated as "on the cone".
/// Wide enough that a time lag typed to five significant figures still
/// lands on the cone.
pub const CONE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Spacelike,
    Timelike,
    OnCone,
    Coincident,
}

/// Spatial distance and time lag between two points of the fluid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Separation {
    /// |Δx|, m.
    pub r: f64,
    /// Δt, s.
    pub dt: f64,
}

impl Separation {
    pub fn new(r: f64, dt: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "distance must be finite and ≥ 0, got {r}"
            )));
        }
        if !dt.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "time lag must be finite, got {dt}"
            )));
        }
        Ok(Self { r, dt })
    }

    pub fn equal_time(r: f64) -> Result<Self> {
        Self::new(r, 0.0)
    }

    /// Classifies the separation against the cone of propagation speed `speed`.
    pub fn regime(&self, speed: f64) -> Regime {
        let ct = speed * self.dt.abs();
        if self.r == 0.0 && self.dt == 0.0 {
            Regime::Coincident
        } else if (self.r - ct).abs() <= CONE_TOLERANCE * self.r.max(ct) {
            Regime::OnCone
        } else if self.r > ct {
            Regime::Spacelike
        } else {
            Regime::Timelike
        }
    }

    fn require_off_cone(&self, speed: f64) -> Result<()> {
        match self.regime(speed) {
            Regime::Coincident => Err(Error::Coincidence),
            Regime::OnCone => Err(Error::SoundCone {
                r: self.r,
                ct: speed * self.dt.abs(),
            }),
            _ => Ok(()),
        }
    }
}

/// Identifies which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    DensityCorrelator,
    EqualTimeCorrelator,
    ScalarFieldAnalog,
    BoundaryShiftPlanar,
    BoundaryCorrelator,
    EmPlateShift,
    StructureFactor,
}

impl Formula {
    pub fn tag(self) -> &'static str {
        match self {
            Formula::DensityCorrelator => "density-correlator",
            Formula::EqualTimeCorrelator => "equal-time-correlator",
            Formula::ScalarFieldAnalog => "scalar-field-analog",
            Formula::BoundaryShiftPlanar => "boundary-shift-planar",
            Formula::BoundaryCorrelator => "boundary-correlator-neumann",
            Formula::EmPlateShift => "em-plate-shift",
            Formula::StructureFactor => "zero-point-structure-factor",
        }
    }
}

/// A correlator result in kg²/m⁶ together with what produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelatorValue {
    pub value: f64,
    pub formula: Formula,
    pub medium: String,
    pub separation: Separation,
}

/// ħρ₀ / (2π² c_S), the common prefactor of every closed form here.
fn prefactor(medium: &FluidMedium) -> f64 {
    HBAR * medium.rho0 / (2.0 * PI * PI * medium.sound_speed)
}

/// Vacuum density-density correlator at separation `sep`.
pub fn correlator(medium: &FluidMedium, sep: Separation) -> Result<CorrelatorValue> {
    sep.require_off_cone(medium.sound_speed)?;
    let r2 = sep.r * sep.r;
    let ct = medium.sound_speed * sep.dt;
    let ct2 = ct * ct;
    let d = r2 - ct2;
    let value = -prefactor(medium) * (r2 + 3.0 * ct2) / (d * d * d);
    Ok(CorrelatorValue {
        value,
        formula: Formula::DensityCorrelator,
        medium: medium.name.clone(),
        separation: sep,
    })
}

/// The same expression with the denominator `(r² - 3c_S²Δt²)³`. Not a
/// physical result; used to measure how far that variant sits from the
/// spectral integral.
pub fn three_tau_denominator_correlator(medium: &FluidMedium, sep: Separation) -> f64 {
    let r2 = sep.r * sep.r;
    let ct2 = (medium.sound_speed * sep.dt).powi(2);
    let d = r2 - 3.0 * ct2;
    -prefactor(medium) * (r2 + 3.0 * ct2) / (d * d * d)
}

/// Equal-time limit, −ħρ₀/(2π² c_S r⁴).
///
/// Bit-identical to `correlator(medium, (r, 0))`.
pub fn equal_time_correlator(medium: &FluidMedium, r: f64) -> Result<CorrelatorValue> {
    let sep = Separation::equal_time(r)?;
    let mut v = correlator(medium, sep)?;
    v.formula = Formula::EqualTimeCorrelator;
    Ok(v)
}

/// ⟨φ̇ φ̇⟩ of a massless relativistic scalar field whose waves travel at
/// `speed`: −(ħc³/2π²)(r² + 3c²Δt²)/(r² − c²Δt²)³.
///
/// Up to a single constant this is the density correlator with c_S replaced
/// by `speed`.
pub fn scalar_field_analog(speed: f64, sep: Separation) -> Result<f64> {
    if !(speed > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "propagation speed must be > 0, got {speed}"
        )));
    }
    sep.require_off_cone(speed)?;
    let r2 = sep.r * sep.r;
    let ct2 = (speed * sep.dt).powi(2);
    let d = r2 - ct2;
    Ok(-HBAR * speed.powi(3) / (2.0 * PI * PI) * (r2 + 3.0 * ct2) / (d * d * d))
}

/// Shift of the mean squared density at distance `z` from a rigid planar
/// wall: −ħρ₀/(32π² c_S z⁴).
pub fn boundary_shift_planar(medium: &FluidMedium, z: f64) -> Result<CorrelatorValue> {
    check_wall_distance(z)?;
    let value = -HBAR * medium.rho0 / (32.0 * PI * PI * medium.sound_speed * z.powi(4));
    Ok(CorrelatorValue {
        value,
        formula: Formula::BoundaryShiftPlanar,
        medium: medium.name.clone(),
        separation: Separation {
            r: 2.0 * z,
            dt: 0.0,
        },
    })
}

fn check_wall_distance(z: f64) -> Result<()> {
    if z == 0.0 {
        Err(Error::BoundaryContact)
    } else if !(z > 0.0) || !z.is_finite() {
        Err(Error::InvalidArgument(format!(
            "distance to the wall must be finite and > 0, got {z}"
        )))
    } else {
        Ok(())
    }
}

/// Correlator in the half space z > 0 bounded by a rigid wall at z = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCorrelator {
    /// Free-space term from the direct separation.
    pub direct: CorrelatorValue,
    /// Term from the mirror image of the second point (Neumann: added).
    pub image: CorrelatorValue,
    /// `direct + image`.
    pub total: f64,
}

/// Two points at heights `z1`, `z2` above the wall, `transverse` apart
/// parallel to it, with time lag `dt`. Uses the image construction: the
/// second point is reflected to −`z2` and its free-space term added.
pub fn boundary_correlator(
    medium: &FluidMedium,
    z1: f64,
    z2: f64,
    transverse: f64,
    dt: f64,
) -> Result<BoundaryCorrelator> {
    check_wall_distance(z1)?;
    check_wall_distance(z2)?;
    let direct_r = (transverse * transverse + (z1 - z2).powi(2)).sqrt();
    let image_r = (transverse * transverse + (z1 + z2).powi(2)).sqrt();
    let direct = correlator(medium, Separation::new(direct_r, dt)?)?;
    let mut image = correlator(medium, Separation::new(image_r, dt)?)?;
    image.formula = Formula::BoundaryCorrelator;
    let total = direct.value + image.value;
    Ok(BoundaryCorrelator {
        direct,
        image,
        total,
    })
}

/// The image contribution alone, which stays finite when the two points merge.
pub fn boundary_image_term(
    medium: &FluidMedium,
    z1: f64,
    z2: f64,
    transverse: f64,
    dt: f64,
) -> Result<CorrelatorValue> {
    check_wall_distance(z1)?;
    check_wall_distance(z2)?;
    let image_r = (transverse * transverse + (z1 + z2).powi(2)).sqrt();
    let mut image = correlator(medium, Separation::new(image_r, dt)?)?;
    image.formula = Formula::BoundaryCorrelator;
    Ok(image)
}

/// Vacuum ⟨E²⟩ and ⟨B²⟩ near a perfectly reflecting plate, as coefficients
/// of ħc/z⁴ (Lorentz–Heaviside units). `z` is in whatever length unit the
/// caller uses for ħc/z⁴.
pub fn em_vacuum_shift_plate(z: f64) -> Result<(f64, f64)> {
    check_wall_distance(z)?;
    let e2 = 3.0 / (16.0 * PI * PI) / z.powi(4);
    Ok((e2, -e2))
}

/// Spectral density of vacuum density fluctuations at wavenumber `q`,
/// ħρ₀q/(2c_S) in kg²/m³. Linear in q.
pub fn zero_point_structure_factor(medium: &FluidMedium, q: f64) -> Result<f64> {
    if !(q >= 0.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wavenumber must be finite and ≥ 0, got {q}"
        )));
    }
    Ok(HBAR * medium.rho0 * q / (2.0 * medium.sound_speed))
}
