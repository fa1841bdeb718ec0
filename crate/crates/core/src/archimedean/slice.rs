//! Real-space forms of the slice profiles `g4`, `g6`.
//!
//! `g4(xi) = int_{[-1/2,1/2]^3, |x1+x2+x3| <= 1/2} e(-3 xi (x1+x2)(x2+x3)(x3+x1)) dx`,
//! and `g6` is the analogous integral over five free coordinates.

use super::profile::fourier_moment;
use super::QuadConfig;
use crate::numeric::{batch_rng, mean_and_stderr, GaussLegendre, Halton};
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// A slice profile value computed along both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceMoment {
    pub xi: f64,
    /// The Fourier-side value; this is the value reported.
    pub fourier: f64,
    pub real_space: f64,
    /// Standard error (or cubature error estimate) of `real_space`.
    pub real_space_error: f64,
    pub tolerance: f64,
}

/// `g4` by cubature.
///
/// With `s = x1+x2`, `u = x2+x3`, `w = x3+x1` the region becomes
/// `|s| + |u| <= 1`, `|w| <= 1 - |s| - |u|` (Jacobian 1/2), and the `w`
/// integral is elementary. What remains is a smooth integral over a
/// triangle, done with tensor Gauss panels.
pub fn g4_real_space(xi: f64, panels: usize) -> f64 {
    let gl = GaussLegendre::new(10);
    let c = 6.0 * PI * xi;
    // sin(c s u L) / (c s u), by symmetry over the quarter s, u >= 0
    let inner = |s: f64| {
        gl.integrate_panels(0.0, 1.0 - s, panels, |u| {
            let l = 1.0 - s - u;
            let t = c * s * u;
            if t.abs() < 1e-8 {
                l * (1.0 - (t * l).powi(2) / 6.0)
            } else {
                (t * l).sin() / t
            }
        })
    };
    4.0 * gl.integrate_panels(0.0, 1.0, panels, inner)
}

/// `g6` by randomly shifted Halton points: `x1..x4` quasi-random, `x5`
/// uniform on its admissible window and weighted by the window length.
///
/// Returns `(estimate, standard error over shifts)`.
pub fn g6_real_space(xi: f64, points: u64, shifts: u64, seed: u64) -> (f64, f64) {
    let means: Vec<f64> = (0..shifts)
        .into_par_iter()
        .map(|k| {
            let mut rng = batch_rng(seed, k);
            let shift: Vec<f64> = (0..5).map(|_| rng.gen::<f64>()).collect();
            let halton = Halton::new(5).with_shift(shift);
            let mut p = [0.0; 5];
            let mut acc = 0.0;
            for i in 0..points {
                halton.point(i + 1, &mut p);
                let x: [f64; 4] = [p[0] - 0.5, p[1] - 0.5, p[2] - 0.5, p[3] - 0.5];
                let s4: f64 = x.iter().sum();
                let lo = (-0.5f64).max(-0.5 - s4);
                let hi = 0.5f64.min(0.5 - s4);
                if hi <= lo {
                    continue;
                }
                let x5 = lo + (hi - lo) * p[4];
                let s = s4 + x5;
                let cubes: f64 = x.iter().map(|v| v * v * v).sum::<f64>() + x5 * x5 * x5;
                acc += (hi - lo) * (2.0 * PI * xi * (cubes - s * s * s)).cos();
            }
            acc / points as f64
        })
        .collect();
    mean_and_stderr(&means)
}

/// `g4(xi) = int v1(xi, z)^4 dz` by the Fourier route, checked against the
/// real-space cubature.
pub fn g4(xi: f64, cfg: &QuadConfig) -> Result<SliceMoment> {
    cfg.validate()?;
    let fourier = fourier_moment(xi, 4, cfg.inner_radius, cfg.panel_nodes);
    let panels = 8 + (xi.abs() / 2.0).ceil() as usize;
    let fine = g4_real_space(xi, 2 * panels);
    let coarse = g4_real_space(xi, panels);
    let err = (fine - coarse).abs();
    cross_check("g4", xi, fourier, fine, err, 1e-3)
}

/// `g6(xi) = int v1(xi, z)^6 dz` by the Fourier route, checked against the
/// quasi-Monte Carlo slice integral.
pub fn g6(xi: f64, cfg: &QuadConfig) -> Result<SliceMoment> {
    cfg.validate()?;
    let fourier = fourier_moment(xi, 6, cfg.inner_radius, cfg.panel_nodes);
    let (real, se) = g6_real_space(xi, cfg.qmc_points, cfg.qmc_shifts, cfg.mc_seed);
    cross_check("g6", xi, fourier, real, se, 2e-3)
}

fn cross_check(
    what: &'static str,
    xi: f64,
    fourier: f64,
    real: f64,
    err: f64,
    floor: f64,
) -> Result<SliceMoment> {
    let tolerance = floor.max(3.0 * err);
    if (fourier - real).abs() > tolerance {
        return Err(Error::RouteDisagreement {
            what,
            first: fourier,
            second: real,
            tolerance,
        });
    }
    Ok(SliceMoment {
        xi,
        fourier,
        real_space: real,
        real_space_error: err,
        tolerance,
    })
}
