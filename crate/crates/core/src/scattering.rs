//! Light scattering by zero-point and thermal density fluctuations.
//!
//! All cross sections are differential cross sections per unit scattering
//! volume, in 1/(m·sr). Multiply by the illuminated volume to get dσ/dΩ.
//!
//! The zero-point cross section is assembled two ways: from the first-order
//! golden-rule ingredients ([`matrix_element_sq`], [`density_of_states`],
//! [`incident_flux`]) in [`zp_cross_section_chain`], and from the final
//! closed form in [`zp_cross_section_exact`]. They must agree to rounding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{FluidMedium, C_LIGHT, HBAR, K_B};

/// Angular frequency from a vacuum wavelength, ω = 2πc/λ.
pub fn omega_from_wavelength(lambda: f64) -> f64 {
    2.0 * PI * C_LIGHT / lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    /// Both polarizations normal to the scattering plane.
    Perpendicular,
    /// Both polarizations in the scattering plane.
    Parallel,
    /// Incident normal, scattered in-plane (or vice versa).
    Crossed,
    /// Averaged over incident, summed over scattered linear polarizations.
    Unpolarized,
}

impl Polarization {
    pub const ALL: [Polarization; 4] = [
        Polarization::Perpendicular,
        Polarization::Parallel,
        Polarization::Crossed,
        Polarization::Unpolarized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Polarization::Perpendicular => "perpendicular",
            Polarization::Parallel => "parallel",
            Polarization::Crossed => "crossed",
            Polarization::Unpolarized => "unpolarized",
        }
    }
}

impl std::str::FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polarization::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown polarization `{s}` (perpendicular, parallel, crossed, unpolarized)"
                ))
            })
    }
}

/// (ê·ê′)² for the selected polarization channel at scattering angle `theta`.
pub fn polarization_factor(theta: f64, pol: Polarization) -> f64 {
    let c2 = theta.cos().powi(2);
    match pol {
        Polarization::Perpendicular => 1.0,
        Polarization::Parallel => c2,
        Polarization::Crossed => 0.0,
        Polarization::Unpolarized => 0.5 * (1.0 + c2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringConfig {
    /// Incident angular frequency (vacuum definition), rad/s.
    pub omega: f64,
    /// Scattering angle, rad, in (0, π].
    pub theta: f64,
    pub polarization: Polarization,
    /// Temperature for thermal quantities, K. Falls back to the medium's
    /// reference temperature when absent.
    pub temperature: Option<f64>,
    /// Use the in-medium photon wavevector ηω/c in momentum conservation,
    /// which multiplies the phonon frequency by η.
    pub in_medium_kinematics: bool,
}

impl ScatteringConfig {
    pub fn new(omega: f64, theta: f64, polarization: Polarization) -> Result<Self> {
        let cfg = Self {
            omega,
            theta,
            polarization,
            temperature: None,
            in_medium_kinematics: false,
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_wavelength(lambda: f64, theta: f64, polarization: Polarization) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "wavelength must be finite and > 0, got {lambda}"
            )));
        }
        Self::new(omega_from_wavelength(lambda), theta, polarization)
    }

    pub fn with_temperature(mut self, t: f64) -> Result<Self> {
        self.temperature = Some(t);
        self.check()?;
        Ok(self)
    }

    pub fn with_in_medium_kinematics(mut self, on: bool) -> Self {
        self.in_medium_kinematics = on;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "omega must be finite and > 0, got {}",
                self.omega
            )));
        }
        if !(self.theta > 0.0 && self.theta <= PI) {
            return Err(Error::InvalidArgument(format!(
                "scattering angle must lie in (0, π], got {}",
                self.theta
            )));
        }
        if let Some(t) = self.temperature {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "temperature must be finite and > 0, got {t}"
                )));
            }
        }
        Ok(())
    }

    fn temperature_for(&self, medium: &FluidMedium) -> f64 {
        self.temperature.unwrap_or(medium.default_temperature)
    }

    /// (ê·ê′)² for this configuration.
    pub fn polarization_factor(&self) -> f64 {
        polarization_factor(self.theta, self.polarization)
    }
}

/// √(2(1 − cos θ)) = 2 sin(θ/2).
pub fn angular_factor(theta: f64) -> f64 {
    (2.0 * (1.0 - theta.cos())).sqrt()
}

/// Frequencies and phonon wavenumber of a Stokes event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kinematics {
    pub omega: f64,
    /// Scattered photon frequency ω′, rad/s.
    pub omega_prime: f64,
    /// Emitted phonon frequency Ω_q, rad/s.
    pub phonon_frequency: f64,
    /// Phonon wavenumber q = Ω_q / c_S, 1/m.
    pub q: f64,
}

/// Ω_q = √(2(1 − cos θ)) (c_S/c) ω, optionally times η; ω′ = ω − Ω_q.
pub fn phonon_kinematics(medium: &FluidMedium, cfg: &ScatteringConfig) -> Result<Kinematics> {
    cfg.check()?;
    let mut big_omega = angular_factor(cfg.theta) * medium.sound_speed / C_LIGHT * cfg.omega;
    if cfg.in_medium_kinematics {
        big_omega *= medium.refractive_index;
    }
    let omega_prime = cfg.omega - big_omega;
    // For Ω_q ≤ ω/2 (always, unless c_S is a sizeable fraction of c) the
    // subtraction is exact (Sterbenz), so ω′ + Ω_q == ω bit for bit.
    let phonon_frequency = cfg.omega - omega_prime;
    Ok(Kinematics {
        omega: cfg.omega,
        omega_prime,
        phonon_frequency,
        q: phonon_frequency / medium.sound_speed,
    })
}

/// |⟨f|H′|i⟩|² = ħ³ωω′Ω_q / (8Vρ₀c_S²) · (ê·ê′)², in J².
pub fn matrix_element_sq(
    medium: &FluidMedium,
    omega: f64,
    omega_prime: f64,
    phonon_frequency: f64,
    volume: f64,
    pol_factor: f64,
) -> f64 {
    HBAR.powi(3) * omega * omega_prime * phonon_frequency
        / (8.0 * volume * medium.rho0 * medium.sound_speed.powi(2))
        * pol_factor
}

/// Photon final states per unit energy per steradian in a box of volume V:
/// Vω′²ε₀^{3/2} / (ħ(2πc)³).
pub fn density_of_states(omega_prime: f64, epsilon0: f64, volume: f64) -> f64 {
    volume * omega_prime.powi(2) * epsilon0.powf(1.5) / (HBAR * (2.0 * PI * C_LIGHT).powi(3))
}

/// Flux of a single photon in a box of volume V: c / (V√ε₀).
pub fn incident_flux(epsilon0: f64, volume: f64) -> f64 {
    C_LIGHT / (volume * epsilon0.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossSectionKind {
    ZeroPointChain,
    ZeroPointExact,
    ZeroPointReduced,
    ThermalBrillouin,
    ThermalTotal,
}

impl CrossSectionKind {
    pub fn tag(self) -> &'static str {
        match self {
            CrossSectionKind::ZeroPointChain => "zero-point-golden-rule-chain",
            CrossSectionKind::ZeroPointExact => "zero-point-exact-kinematics",
            CrossSectionKind::ZeroPointReduced => "zero-point-omega5",
            CrossSectionKind::ThermalBrillouin => "thermal-brillouin",
            CrossSectionKind::ThermalTotal => "thermal-brillouin-plus-rayleigh",
        }
    }
}

/// Differential cross section per unit scattering volume, 1/(m·sr).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossSectionValue {
    pub value: f64,
    pub formula: CrossSectionKind,
    pub pol_factor: f64,
}

/// Box volume used internally by the golden-rule chain. Any value works;
/// the result is divided back out.
pub const CHAIN_VOLUME: f64 = 1.0;

/// Zero-point cross section from transition rate / (flux · dΩ) with the
/// quantization volume V as a free parameter.
pub fn zp_cross_section_chain_with_volume(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
    volume: f64,
) -> Result<CrossSectionValue> {
    if !(volume > 0.0) || !volume.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "volume must be finite and > 0, got {volume}"
        )));
    }
    let kin = phonon_kinematics(medium, cfg)?;
    let pol = cfg.polarization_factor();
    let m2 = matrix_element_sq(
        medium,
        kin.omega,
        kin.omega_prime,
        kin.phonon_frequency,
        volume,
        pol,
    );
    let rho_f = density_of_states(kin.omega_prime, medium.epsilon0, volume);
    let rate = 2.0 * PI / HBAR * m2 * rho_f;
    let sigma = rate / incident_flux(medium.epsilon0, volume);
    // What is left is proportional to V, the scattering volume.
    Ok(CrossSectionValue {
        value: sigma / volume,
        formula: CrossSectionKind::ZeroPointChain,
        pol_factor: pol,
    })
}

pub fn zp_cross_section_chain(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
) -> Result<CrossSectionValue> {
    zp_cross_section_chain_with_volume(medium, cfg, CHAIN_VOLUME)
}

/// ħωω′³Ω_q η⁴ / (32π²c⁴c_S²ρ₀) · (ê·ê′)² with ω′, Ω_q from [`phonon_kinematics`].
pub fn zp_cross_section_exact(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
) -> Result<CrossSectionValue> {
    let kin = phonon_kinematics(medium, cfg)?;
    let pol = cfg.polarization_factor();
    let value = HBAR
        * kin.omega
        * kin.omega_prime.powi(3)
        * kin.phonon_frequency
        * medium.refractive_index.powi(4)
        / (32.0 * PI * PI * C_LIGHT.powi(4) * medium.sound_speed.powi(2) * medium.rho0)
        * pol;
    Ok(CrossSectionValue {
        value,
        formula: CrossSectionKind::ZeroPointExact,
        pol_factor: pol,
    })
}

/// √(2(1 − cos θ)) ħω⁵η⁴ / (32π²c⁵c_Sρ₀) · (ê·ê′)², the ω′ ≈ ω form.
pub fn zp_cross_section_reduced(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
) -> Result<CrossSectionValue> {
    cfg.check()?;
    let pol = cfg.polarization_factor();
    let value =
        angular_factor(cfg.theta) * HBAR * cfg.omega.powi(5) * medium.refractive_index.powi(4)
            / (32.0 * PI * PI * C_LIGHT.powi(5) * medium.sound_speed * medium.rho0)
            * pol;
    Ok(CrossSectionValue {
        value,
        formula: CrossSectionKind::ZeroPointReduced,
        pol_factor: pol,
    })
}

/// Adiabatic compressibility β_S = 1/(ρ₀c_S²), 1/Pa.
pub fn adiabatic_compressibility(medium: &FluidMedium) -> f64 {
    1.0 / (medium.rho0 * medium.sound_speed.powi(2))
}

/// ω⁴k_BT / (16π²c⁴) common to both thermal terms.
fn thermal_prefactor(cfg: &ScatteringConfig, t: f64) -> f64 {
    cfg.omega.powi(4) * K_B * t / (16.0 * PI * PI * C_LIGHT.powi(4))
}

/// Thermal Brillouin (phonon) cross section:
/// ω⁴k_BT / (16π²c⁴c_S²ρ₀) · [ρ₀(∂ε/∂ρ₀)_S]² · (ê·ê′)².
pub fn thermal_brillouin_cross_section(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
) -> Result<CrossSectionValue> {
    cfg.check()?;
    let t = cfg.temperature_for(medium);
    let pol = cfg.polarization_factor();
    let value = cfg.omega.powi(4) * K_B * t
        / (16.0 * PI * PI * C_LIGHT.powi(4) * medium.sound_speed.powi(2) * medium.rho0)
        * medium.depsilon_drho.powi(2)
        * pol;
    Ok(CrossSectionValue {
        value,
        formula: CrossSectionKind::ThermalBrillouin,
        pol_factor: pol,
    })
}

/// The two thermal contributions, before the polarization factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalTerms {
    /// β_S [ρ₀(∂ε/∂ρ₀)_S]² term (Brillouin doublet).
    pub brillouin: f64,
    /// (T/ρ₀C_P)(∂ε/∂T)_P² term (central Rayleigh line).
    pub rayleigh: f64,
}

pub fn thermal_terms(medium: &FluidMedium, cfg: &ScatteringConfig) -> Result<ThermalTerms> {
    cfg.check()?;
    let missing = |field| Error::MissingProperty {
        material: medium.name.clone(),
        field,
    };
    let cp = medium.heat_capacity.ok_or_else(|| missing("cp_j_kg_k"))?;
    let de_dt = medium
        .depsilon_dt
        .ok_or_else(|| missing("depsilon_dt_per_k"))?;
    let t = cfg.temperature_for(medium);
    let pre = thermal_prefactor(cfg, t);
    Ok(ThermalTerms {
        brillouin: pre * adiabatic_compressibility(medium) * medium.depsilon_drho.powi(2),
        rayleigh: pre * t / (medium.rho0 * cp) * de_dt.powi(2),
    })
}

/// Brillouin plus Rayleigh thermal cross section. Needs the medium's heat
/// capacity and (∂ε/∂T)_P.
pub fn thermal_total_cross_section(
    medium: &FluidMedium,
    cfg: &ScatteringConfig,
) -> Result<CrossSectionValue> {
    let terms = thermal_terms(medium, cfg)?;
    let pol = cfg.polarization_factor();
    Ok(CrossSectionValue {
        value: (terms.brillouin + terms.rayleigh) * pol,
        formula: CrossSectionKind::ThermalTotal,
        pol_factor: pol,
    })
}

/// Ratio of zero-point to thermal Brillouin scattering:
/// √(2(1 − cos θ)) (ħω/2k_BT) (c_S/c) η⁴ [ρ₀(∂ε/∂ρ₀)_S]⁻².
pub fn ratio_zp_thermal(medium: &FluidMedium, cfg: &ScatteringConfig) -> Result<f64> {
    cfg.check()?;
    if medium.depsilon_drho == 0.0 {
        return Err(Error::DivisionByZero(
            "ρ₀(∂ε/∂ρ₀)_S = 0: no thermal Brillouin scattering to compare with",
        ));
    }
    let t = cfg.temperature_for(medium);
    Ok(angular_factor(cfg.theta)
        * (HBAR * cfg.omega / (2.0 * K_B * t))
        * (medium.sound_speed / C_LIGHT)
        * medium.refractive_index.powi(4)
        / medium.depsilon_drho.powi(2))
}
