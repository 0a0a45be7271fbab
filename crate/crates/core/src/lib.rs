//! Zero-point density fluctuations of a classical liquid and the light
//! scattering they cause.
//!
//! Treating sound in a fluid as a quantized field with linear dispersion,
//! the phonon vacuum carries density fluctuations whose two-point function
//! has the same form as that of the time derivative of a massless scalar
//! field, with the speed of light replaced by the speed of sound. This crate
//! provides
//!
//! * [`correlator`]: closed-form vacuum correlators, the planar-wall shift and
//!   the zero-point structure factor,
//! * [`spectral`] and [`lattice`]: two independent numerical routes to the
//!   same correlator (regulated mode integral, finite-box mode sum),
//! * [`scattering`]: kinematics, the golden-rule assembly of the zero-point
//!   scattering cross section, thermal Brillouin/Rayleigh cross sections and
//!   their ratio,
//! * [`medium`]: the fluid model and material files,
//! * [`verify`]: the cross-checks between these, also exposed by the
//!   `fluctus verify` command.
//!
//! ```
//! use fluctus::medium::builtin_material;
//! use fluctus::scattering::{ratio_zp_thermal, Polarization, ScatteringConfig};
//!
//! let water = builtin_material("water").unwrap();
//! let cfg = ScatteringConfig::from_wavelength(350e-9, std::f64::consts::PI, Polarization::Perpendicular)
//!     .unwrap()
//!     .with_temperature(295.0)
//!     .unwrap();
//! let r = ratio_zp_thermal(&water, &cfg).unwrap();
//! assert!((r - 4.23e-3).abs() < 1e-5);
//! ```

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod correlator;
pub mod error;
pub mod lattice;
pub mod medium;
pub mod quadrature;
pub mod scattering;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
