//! Physical constants and the fluid material model.
//!
//! A [`FluidMedium`] carries everything the correlator and scattering code
//! needs to know about a liquid. Only media that pass [`FluidMedium::validate`]
//! with no violations can be obtained from [`builtin_material`],
//! [`load_material`] or [`FluidMedium::new`].
//!
//! Material files are plain `key = value` text:
//!
//! ```text
//! # water near room temperature
//! name              = water
//! rho0_kg_m3        = 997
//! cs_m_s            = 1480
//! refractive_index  = 1.4
//! depsilon_drho     = 0.79
//! temperature_k     = 295      # optional
//! cp_j_kg_k         = 4181     # optional
//! depsilon_dt_per_k = -0.0036  # optional
//! ```

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Fundamental constants shared by every module (CODATA 2018, exact SI where defined).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Speed of light in vacuum, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    k_b: 1.380_649e-23,
};

pub const HBAR: f64 = CONSTANTS.hbar;
pub const C_LIGHT: f64 = CONSTANTS.c;
pub const K_B: f64 = CONSTANTS.k_b;

/// Temperature assumed when a material does not state one, K.
pub const ROOM_TEMPERATURE: f64 = 295.0;

/// Relative slack allowed in the `epsilon0 = eta^2` check.
const EPSILON_ETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluidMedium {
    pub name: String,
    /// Mean mass density, kg/m³.
    pub rho0: f64,
    /// Speed of sound, m/s.
    pub sound_speed: f64,
    /// Refractive index at the probe frequency.
    pub refractive_index: f64,
    /// Mean dielectric constant; always `refractive_index²` for a valid medium.
    pub epsilon0: f64,
    /// Dimensionless product ρ₀ (∂ε/∂ρ₀) at constant entropy.
    pub depsilon_drho: f64,
    /// Heat capacity per unit mass at constant pressure, J/(kg K).
    pub heat_capacity: Option<f64>,
    /// (∂ε/∂T) at constant pressure, 1/K.
    pub depsilon_dt: Option<f64>,
    /// Reference temperature, K.
    pub default_temperature: f64,
}

/// A violated material invariant. Violations are data: [`FluidMedium::validate`]
/// returns all of them at once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    NonFinite(&'static str),
    DensityNotPositive(f64),
    SoundSpeedNotPositive(f64),
    SoundSpeedNotSubluminal(f64),
    IndexBelowOne(f64),
    EpsilonBelowOne(f64),
    EpsilonNotIndexSquared { epsilon0: f64, index: f64 },
    TemperatureNotPositive(f64),
    HeatCapacityNotPositive(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite(field) => write!(f, "{field} must be finite"),
            Violation::DensityNotPositive(v) => write!(f, "rho0 > 0 violated (rho0 = {v})"),
            Violation::SoundSpeedNotPositive(v) => write!(f, "cS > 0 violated (cS = {v})"),
            Violation::SoundSpeedNotSubluminal(v) => write!(f, "cS < c violated (cS = {v})"),
            Violation::IndexBelowOne(v) => write!(f, "eta ≥ 1 violated (eta = {v})"),
            Violation::EpsilonBelowOne(v) => write!(f, "epsilon0 ≥ 1 violated (epsilon0 = {v})"),
            Violation::EpsilonNotIndexSquared { epsilon0, index } => write!(
                f,
                "epsilon0 = eta² violated (epsilon0 = {epsilon0}, eta² = {})",
                index * index
            ),
            Violation::TemperatureNotPositive(v) => {
                write!(f, "defaultT > 0 violated (defaultT = {v})")
            }
            Violation::HeatCapacityNotPositive(v) => write!(f, "cP > 0 violated (cP = {v})"),
        }
    }
}

impl FluidMedium {
    /// Builds a medium with `epsilon0 = refractive_index²` and no optional
    /// thermal data, then validates it.
    pub fn new(
        name: impl Into<String>,
        rho0: f64,
        sound_speed: f64,
        refractive_index: f64,
        depsilon_drho: f64,
    ) -> Result<Self> {
        Self {
            name: name.into(),
            rho0,
            sound_speed,
            refractive_index,
            epsilon0: refractive_index * refractive_index,
            depsilon_drho,
            heat_capacity: None,
            depsilon_dt: None,
            default_temperature: ROOM_TEMPERATURE,
        }
        .validated()
    }

    pub fn with_heat_capacity(mut self, cp: f64) -> Result<Self> {
        self.heat_capacity = Some(cp);
        self.validated()
    }

    pub fn with_depsilon_dt(mut self, d: f64) -> Result<Self> {
        self.depsilon_dt = Some(d);
        self.validated()
    }

    pub fn with_default_temperature(mut self, t: f64) -> Result<Self> {
        self.default_temperature = t;
        self.validated()
    }

    /// Checks every invariant and returns the violated ones; empty when valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let required = [
            ("rho0", self.rho0),
            ("cS", self.sound_speed),
            ("eta", self.refractive_index),
            ("epsilon0", self.epsilon0),
            ("drho", self.depsilon_drho),
            ("defaultT", self.default_temperature),
        ];
        let optional = [("cP", self.heat_capacity), ("dEpsdT", self.depsilon_dt)];
        for (field, v) in required {
            if !v.is_finite() {
                out.push(Violation::NonFinite(field));
            }
        }
        for (field, v) in optional {
            if matches!(v, Some(x) if !x.is_finite()) {
                out.push(Violation::NonFinite(field));
            }
        }

        if !(self.rho0 > 0.0) {
            out.push(Violation::DensityNotPositive(self.rho0));
        }
        if !(self.sound_speed > 0.0) {
            out.push(Violation::SoundSpeedNotPositive(self.sound_speed));
        }
        if !(self.sound_speed < C_LIGHT) {
            out.push(Violation::SoundSpeedNotSubluminal(self.sound_speed));
        }
        if !(self.refractive_index >= 1.0) {
            out.push(Violation::IndexBelowOne(self.refractive_index));
        }
        if !(self.epsilon0 >= 1.0) {
            out.push(Violation::EpsilonBelowOne(self.epsilon0));
        }
        let eta2 = self.refractive_index * self.refractive_index;
        if !((self.epsilon0 - eta2).abs() <= EPSILON_ETA_TOL * eta2.abs()) {
            out.push(Violation::EpsilonNotIndexSquared {
                epsilon0: self.epsilon0,
                index: self.refractive_index,
            });
        }
        if !(self.default_temperature > 0.0) {
            out.push(Violation::TemperatureNotPositive(self.default_temperature));
        }
        if let Some(cp) = self.heat_capacity {
            if !(cp > 0.0) {
                out.push(Violation::HeatCapacityNotPositive(cp));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Serializes to the material file format. Parsing the output with
    /// [`parse_material`] yields an equal medium.
    pub fn to_material_file(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        kv("name", self.name.clone());
        kv("rho0_kg_m3", self.rho0.to_string());
        kv("cs_m_s", self.sound_speed.to_string());
        kv("refractive_index", self.refractive_index.to_string());
        kv("depsilon_drho", self.depsilon_drho.to_string());
        if let Some(cp) = self.heat_capacity {
            kv("cp_j_kg_k", cp.to_string());
        }
        if let Some(d) = self.depsilon_dt {
            kv("depsilon_dt_per_k", d.to_string());
        }
        kv("temperature_k", self.default_temperature.to_string());
        s
    }
}

/// Names accepted by [`builtin_material`].
pub const BUILTIN_MATERIALS: &[&str] = &["water"];

/// Returns a built-in material.
///
/// `water` uses c_S = 1480 m/s, η = 1.4 and ρ₀(∂ε/∂ρ₀)_S = 0.79. Its density
/// (997 kg/m³) is a standard table value; it does not enter the
/// zero-point/thermal ratio.
pub fn builtin_material(name: &str) -> Result<FluidMedium> {
    match name {
        "water" => FluidMedium::new("water", 997.0, 1480.0, 1.4, 0.79),
        _ => Err(Error::UnknownMaterial {
            name: name.to_string(),
            available: BUILTIN_MATERIALS.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

/// Reads and validates a material file.
pub fn load_material(path: impl AsRef<Path>) -> Result<FluidMedium> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_material(&text, path)
}

const REQUIRED_KEYS: [&str; 5] = [
    "name",
    "rho0_kg_m3",
    "cs_m_s",
    "refractive_index",
    "depsilon_drho",
];
const OPTIONAL_KEYS: [&str; 3] = ["cp_j_kg_k", "depsilon_dt_per_k", "temperature_k"];

/// Parses material file text. `origin` is only used in error messages.
pub fn parse_material(text: &str, origin: &Path) -> Result<FluidMedium> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };

    let mut name: Option<String> = None;
    let mut nums: [Option<f64>; 7] = [None; 7];
    let numeric_keys = [
        "rho0_kg_m3",
        "cs_m_s",
        "refractive_index",
        "depsilon_drho",
        "cp_j_kg_k",
        "depsilon_dt_per_k",
        "temperature_k",
    ];

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(lineno, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(parse_err(lineno, format!("empty value for `{key}`")));
        }

        if key == "name" {
            if name.is_some() {
                return Err(parse_err(lineno, "duplicate key `name`".into()));
            }
            name = Some(value.to_string());
            continue;
        }
        let slot = numeric_keys.iter().position(|k| *k == key).ok_or_else(|| {
            let known: Vec<_> = REQUIRED_KEYS.iter().chain(OPTIONAL_KEYS.iter()).collect();
            parse_err(
                lineno,
                format!("unknown key `{key}` (known keys: {known:?})"),
            )
        })?;
        if nums[slot].is_some() {
            return Err(parse_err(lineno, format!("duplicate key `{key}`")));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| parse_err(lineno, format!("`{key}`: `{value}` is not a number")))?;
        nums[slot] = Some(v);
    }

    let missing = |key: &'static str| Error::MissingKey {
        path: origin.to_path_buf(),
        key,
    };
    let name = name.ok_or_else(|| missing("name"))?;
    let rho0 = nums[0].ok_or_else(|| missing("rho0_kg_m3"))?;
    let cs = nums[1].ok_or_else(|| missing("cs_m_s"))?;
    let eta = nums[2].ok_or_else(|| missing("refractive_index"))?;
    let drho = nums[3].ok_or_else(|| missing("depsilon_drho"))?;

    FluidMedium {
        name,
        rho0,
        sound_speed: cs,
        refractive_index: eta,
        epsilon0: eta * eta,
        depsilon_drho: drho,
        heat_capacity: nums[4],
        depsilon_dt: nums[5],
        default_temperature: nums[6].unwrap_or(ROOM_TEMPERATURE),
    }
    .validated()
}
