//! The archimedean side: the oscillatory integral `v`, the singular
//! integral `J(1)` and its slice profiles, the kernel sandwich, and Monte
//! Carlo Siegel volumes.
//!
//! `v1(xi, z) = int_{-1/2}^{1/2} e(xi x^3 + z x) dx` and
//! `J(1) = int_R g6(xi) g4(xi) dxi` with `g_k(xi) = int_R v1(xi, z)^k dz`.
//! `v1` is invariant under `(xi, z) -> (-xi, -z)` but not under `z -> -z`
//! alone, so every `z` integral runs over a window that is lopsided
//! towards the stationary band `[-3xi/4, 0]`.

mod config;
pub mod kernels;
mod profile;
mod schmidt;
mod siegel;
mod slice;
mod truncated;
mod v;

pub use config::QuadConfig;
pub use profile::{FourierProfile, TruncatedIntegral, XI_STEP, ZETA_STEP};
pub use schmidt::{sandwich_check, Sandwich};
pub use siegel::{m_infinity, siegel_extrapolation, SiegelExtrapolation, SiegelVolume};
pub use slice::{g4, g4_real_space, g6, g6_real_space, SliceMoment};
pub use truncated::{i_trunc, TruncatedSingularIntegral};
pub use v::eval_v;

use crate::{Error, Result};
use serde::Serialize;

/// `J(1)` with the evidence for its truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularIntegral {
    pub value: f64,
    pub partial: f64,
    pub tail: f64,
    pub outer_radius: f64,
    pub inner_radius: f64,
    /// The same estimate built from `|xi| <= R/2` only.
    pub half_radius_value: f64,
    pub relative_change: f64,
    pub doublings: u32,
}

/// Computes `J(1)`, doubling the outer radius until halving it changes the
/// value by less than the configured tolerance.
pub fn singular_integral(cfg: &QuadConfig) -> Result<(SingularIntegral, FourierProfile)> {
    cfg.validate()?;
    let mut radius = cfg.outer_radius;
    let mut last_change = f64::NAN;
    for doublings in 0..=cfg.max_doublings {
        let profile = FourierProfile::compute(radius, cfg.inner_radius, cfg.panel_nodes)?;
        let full = profile.singular_integral(radius);
        let half = profile.singular_integral(radius / 2.0);
        let change = ((full.value - half.value) / full.value).abs();
        if change <= cfg.tolerance {
            let si = SingularIntegral {
                value: full.value,
                partial: full.partial,
                tail: full.tail,
                outer_radius: full.radius,
                inner_radius: cfg.inner_radius,
                half_radius_value: half.value,
                relative_change: change,
                doublings,
            };
            return Ok((si, profile));
        }
        last_change = change;
        radius *= 2.0;
    }
    Err(Error::NonConvergence(format!(
        "J(1) still moves by {last_change:.2e} after {} doublings of the outer radius",
        cfg.max_doublings
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityRoute {
    Fourier,
    SiegelMc,
    SchmidtKernel,
}

/// One estimate of `chi_inf`, tagged with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub route: DensityRoute,
    pub chi_infinity: f64,
    /// The Fourier value of `J(1)` the estimate is compared with.
    pub j1: f64,
    pub error_bar: f64,
}

impl DensityEstimate {
    pub fn from_fourier(si: &SingularIntegral) -> Self {
        Self {
            route: DensityRoute::Fourier,
            chi_infinity: si.value,
            j1: si.value,
            error_bar: (si.value - si.half_radius_value).abs(),
        }
    }

    /// The linear extrapolation with a three-sigma bar.
    pub fn from_siegel(ex: &SiegelExtrapolation, j1: f64) -> Self {
        Self {
            route: DensityRoute::SiegelMc,
            chi_infinity: ex.linear,
            j1,
            error_bar: 3.0 * ex.linear_stderr,
        }
    }

    /// `U(eta, eta, eta)` at the narrowest admissible `eta`, with the change
    /// from doubling `eta` as its bar.
    pub fn from_schmidt(profile: &FourierProfile, eta: f64, j1: f64) -> Result<Self> {
        let u = profile.u_eta([eta; 3])?;
        let u2 = profile.u_eta([(2.0 * eta).min(0.99); 3])?;
        Ok(Self {
            route: DensityRoute::SchmidtKernel,
            chi_infinity: u,
            j1,
            error_bar: (u - u2).abs(),
        })
    }

    /// Whether this estimate and another are within their combined bars
    /// plus a relative allowance.
    pub fn agrees_with(&self, other: &DensityEstimate, relative: f64) -> bool {
        let d = (self.chi_infinity - other.chi_infinity).abs();
        d <= relative * other.chi_infinity.abs() + self.error_bar + other.error_bar
    }
}
