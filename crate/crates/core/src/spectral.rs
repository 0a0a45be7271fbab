//! Independent evaluation of the density correlator from its mode integral.
//!
//! The vacuum correlator is the Fourier integral
//!
//! ```text
//! (ħρ₀ / 16π³c_S²) ∫ d³q Ω_q exp(i q·Δx − i Ω_q Δt),   Ω_q = c_S q.
//! ```
//!
//! After the angular integration this is
//! `(ħρ₀ / 4π²c_S r) ∫₀^∞ q² sin(qr) e^{−i c_S Δt q} dq`, which does not
//! converge on its own. We insert a damping factor `e^{−εq}`, integrate
//! numerically for a decreasing sequence of ε, and extrapolate to ε → 0
//! with a polynomial in ε². Nothing here uses the closed forms of
//! [`crate::correlator`], so agreement between the two is a real check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlator::{Regime, Separation};
use crate::error::{Error, Result};
use crate::medium::{FluidMedium, HBAR};
use crate::quadrature::{integrate_panels, Estimate};

/// Default regulator ladder as fractions of the characteristic length.
pub const DEFAULT_RATIOS: [f64; 4] = [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0];
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;
pub const DEFAULT_ORDER: usize = 3;

/// The integrand is dropped once q² e^{−εq} falls below this fraction of its peak.
pub const DAMPING_FLOOR: f64 = 1e-14;

/// Sequence of damping lengths and the numerical settings used with them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegulatorSchedule {
    epsilons: Vec<f64>,
    quad_tol: f64,
    extrap_order: usize,
}

impl RegulatorSchedule {
    pub fn new(epsilons: Vec<f64>, quad_tol: f64, extrap_order: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if epsilons.len() < 3 {
            return bad(format!(
                "regulator schedule needs at least 3 damping lengths, got {}",
                epsilons.len()
            ));
        }
        if epsilons.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
            return bad("damping lengths must be finite and > 0".into());
        }
        if epsilons.windows(2).any(|w| !(w[1] < w[0])) {
            return bad("damping lengths must be strictly decreasing".into());
        }
        if !(quad_tol > 0.0 && quad_tol <= 1e-6) {
            return bad(format!(
                "quadrature tolerance must lie in (0, 1e-6], got {quad_tol}"
            ));
        }
        if extrap_order < 1 || extrap_order >= epsilons.len() {
            return bad(format!(
                "extrapolation order must be in [1, {}), got {extrap_order}",
                epsilons.len()
            ));
        }
        Ok(Self {
            epsilons,
            quad_tol,
            extrap_order,
        })
    }

    /// Damping lengths `ratio * length` with default tolerance and order.
    pub fn scaled(length: f64, ratios: &[f64]) -> Result<Self> {
        Self::new(
            ratios.iter().map(|k| k * length).collect(),
            DEFAULT_QUAD_TOL,
            DEFAULT_ORDER.min(ratios.len().saturating_sub(1)),
        )
    }

    /// Default ladder for a given separation, scaled to the distance from
    /// the nearest singularity of the damped integral: `min(r, |r − c_S|Δt||)`.
    ///
    /// The ε-expansion of the damped integral has exactly that radius of
    /// convergence, so a ladder scaled to r alone breaks down near the cone.
    pub fn for_separation(medium: &FluidMedium, r: f64, dt: f64) -> Result<Self> {
        let ct = medium.sound_speed * dt.abs();
        let length = r.min((r - ct).abs());
        Self::scaled(length, &DEFAULT_RATIOS)
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn extrap_order(&self) -> usize {
        self.extrap_order
    }

    /// Every ε must sit at least a decade below the target distance.
    pub fn check_target(&self, r: f64) -> Result<()> {
        match self.epsilons.iter().find(|e| **e * 10.0 > r) {
            Some(e) => Err(Error::InvalidArgument(format!(
                "damping length {e:e} m is not 10x below r = {r:e} m"
            ))),
            None => Ok(()),
        }
    }
}

fn radial_prefactor(medium: &FluidMedium, r: f64) -> f64 {
    HBAR * medium.rho0 / (4.0 * PI * PI * medium.sound_speed * r)
}

/// Upper limit q_max·ε where q² e^{−εq} has dropped to [`DAMPING_FLOOR`] of
/// its maximum (attained at εq = 2).
fn truncation_point() -> f64 {
    let log_target = (DAMPING_FLOOR * 4.0 * (-2.0f64).exp()).ln();
    // u² e^{−u} = target  ⇔  u = 2 ln u − ln target
    let mut u: f64 = 40.0;
    for _ in 0..50 {
        u = 2.0 * u.ln() - log_target;
    }
    u
}

/// Damped correlator at fixed regulator ε, integrated numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegulatedValue {
    pub eps: f64,
    /// kg²/m⁶
    pub value: f64,
    /// Absolute quadrature error estimate, kg²/m⁶.
    pub error: f64,
}

/// Numerically integrates the real part of
/// `(ħρ₀ / 4π²c_S r) ∫₀^∞ q² sin(qr) e^{−q(ε + i c_S Δt)} dq`.
pub fn regulated_integrand_reduction(
    medium: &FluidMedium,
    r: f64,
    dt: f64,
    eps: f64,
    quad_tol: f64,
) -> Result<RegulatedValue> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("r must be > 0, got {r}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    let ct = medium.sound_speed * dt;
    let q_max = truncation_point() / eps;

    // One initial panel per zero of the fastest component of sin(qr)cos(c_S Δt q).
    let width = PI / (r + ct.abs());
    let n_panels = ((q_max / width).ceil() as usize).max(1);
    let mut breaks: Vec<f64> = (0..n_panels).map(|k| k as f64 * width).collect();
    breaks.push(q_max);

    let integrand = |q: f64| q * q * (q * r).sin() * (ct * q).cos() * (-eps * q).exp();
    let Estimate { value, error, .. } =
        integrate_panels(integrand, &breaks, quad_tol, 16 * n_panels + 1024)?;
    let pre = radial_prefactor(medium, r);
    Ok(RegulatedValue {
        eps,
        value: pre * value,
        error: pre * error,
    })
}

/// Closed form of the damped integral:
/// `∫₀^∞ q² sin(qr) e^{−sq} dq = 2r(3s² − r²)/(s² + r²)³`, s = ε + i c_S Δt.
///
/// Only used to check [`regulated_integrand_reduction`].
pub fn damped_closed_form(medium: &FluidMedium, r: f64, dt: f64, eps: f64) -> f64 {
    let s = Complex64::new(eps, medium.sound_speed * dt);
    let s2 = s * s;
    let r2 = r * r;
    let i = 2.0 * r * (3.0 * s2 - r2) / (s2 + r2).powi(3);
    radial_prefactor(medium, r) * i.re
}

/// Result of the ε → 0 extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrapolated {
    /// kg²/m⁶
    pub value: f64,
    /// |highest-order estimate − next-lower-order estimate|, kg²/m⁶.
    pub error_estimate: f64,
    pub regulated: Vec<RegulatedValue>,
}

impl Extrapolated {
    pub fn relative_error_estimate(&self) -> f64 {
        self.error_estimate / self.value.abs()
    }
}

/// Neville evaluation at x = 0 of the interpolating polynomial through `(xs, ys)`.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Correlator from the mode integral, regulator removed by extrapolation.
pub fn extrapolated_correlator(
    medium: &FluidMedium,
    r: f64,
    dt: f64,
    sched: &RegulatorSchedule,
) -> Result<Extrapolated> {
    let sep = Separation::new(r, dt)?;
    match sep.regime(medium.sound_speed) {
        Regime::OnCone => {
            return Err(Error::SoundCone {
                r,
                ct: medium.sound_speed * dt.abs(),
            })
        }
        Regime::Coincident => return Err(Error::Coincidence),
        _ if r == 0.0 => {
            return Err(Error::InvalidArgument(
                "the radial reduction needs r > 0".into(),
            ))
        }
        _ => {}
    }
    sched.check_target(r)?;

    // Each ε is independent; collect() keeps the input order.
    let regulated = sched
        .epsilons
        .par_iter()
        .map(|&eps| regulated_integrand_reduction(medium, r, dt, eps, sched.quad_tol))
        .collect::<Result<Vec<_>>>()?;

    let k = sched.extrap_order;
    let n = regulated.len();
    let xs: Vec<f64> = regulated.iter().map(|v| v.eps * v.eps).collect();
    let ys: Vec<f64> = regulated.iter().map(|v| v.value).collect();
    let high = neville_at_zero(&xs[n - k - 1..], &ys[n - k - 1..]);
    let low = neville_at_zero(&xs[n - k..], &ys[n - k..]);
    let error_estimate = (high - low).abs();

    let limit = 100.0 * sched.quad_tol * high.abs();
    if !(error_estimate <= limit) {
        return Err(Error::Extrapolation {
            estimate: error_estimate,
            limit,
        });
    }
    Ok(Extrapolated {
        value: high,
        error_estimate,
        regulated,
    })
}

/// [`extrapolated_correlator`] with [`RegulatorSchedule::for_separation`].
pub fn extrapolated_correlator_default(
    medium: &FluidMedium,
    r: f64,
    dt: f64,
) -> Result<Extrapolated> {
    let sep = Separation::new(r, dt)?;
    if sep.regime(medium.sound_speed) == Regime::OnCone {
        return Err(Error::SoundCone {
            r,
            ct: medium.sound_speed * dt.abs(),
        });
    }
    let sched = RegulatorSchedule::for_separation(medium, r, dt)?;
    extrapolated_correlator(medium, r, dt, &sched)
}
