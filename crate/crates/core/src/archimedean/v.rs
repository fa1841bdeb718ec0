use crate::numeric::{unit_phase, GaussLegendre};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_REFINEMENTS: u32 = 12;

/// `v(b1, b2; B) = int_{-B}^{B} e(b1 g^3 + b2 g) dg`.
///
/// The integrand's imaginary part is odd, so the value is real; it is
/// returned as a complex number with zero imaginary part. For `b1 = 0` the
/// elementary antiderivative is used. Otherwise Gauss panels of width at
/// most a quarter period are refined by doubling until two successive
/// rules agree; hitting the refinement cap is reported as an error.
pub fn eval_v(b1: f64, b2: f64, bound: f64) -> Result<Complex64> {
    if !(b1.is_finite() && b2.is_finite() && bound.is_finite() && bound >= 0.0) {
        return Err(Error::invalid("eval_v needs finite arguments and B >= 0"));
    }
    if b1 == 0.0 {
        let re = if b2 == 0.0 {
            2.0 * bound
        } else {
            (2.0 * PI * b2 * bound).sin() / (PI * b2)
        };
        return Ok(Complex64::new(re, 0.0));
    }
    let gl = GaussLegendre::new(8);
    let cycles = b1.abs() * bound.powi(3) + b2.abs() * bound;
    let mut panels = (4.0 * cycles).ceil() as usize + 2;
    let rule = |panels: usize| {
        2.0 * gl.integrate_panels(0.0, bound, panels, |g| {
            unit_phase(b1 * g * g * g + b2 * g).0
        })
    };
    let mut prev = rule(panels);
    for _ in 0..MAX_REFINEMENTS {
        panels *= 2;
        let next = rule(panels);
        if (next - prev).abs() <= 1e-13 * (2.0 * bound).max(1.0) {
            return Ok(Complex64::new(next, 0.0));
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!(
        "eval_v({b1}, {b2}; {bound}) did not settle after {MAX_REFINEMENTS} refinements"
    )))
}

/// `v1(xi, z) = int_{-1/2}^{1/2} e(xi x^3 + z x) dx` on the progression
/// `z = z0 + j h`, `j = 0..n`.
///
/// Panels on `[0, 1/2]` are sized for the largest frequency on the grid.
/// Stepping `z` multiplies each node's phasor by the fixed `e(h x)`; the
/// phasors are recomputed from scratch every [`RESEED`] steps to bound the
/// rounding drift.
pub(crate) fn v1_progression(xi: f64, z0: f64, h: f64, n: usize, gl: &GaussLegendre) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let zmax = z0.abs().max((z0 + h * (n - 1) as f64).abs());
    let freq = 0.75 * xi.abs() + zmax;
    let panels = (2.0 * freq).ceil() as usize + 2;
    let (xs, ws) = gl.panel_rule(0.0, 0.5, panels);
    let m = xs.len();
    let cubic: Vec<f64> = xs.iter().map(|&x| xi * x * x * x).collect();
    let (mut step_re, mut step_im) = (vec![0.0; m], vec![0.0; m]);
    for i in 0..m {
        let (c, s) = unit_phase(h * xs[i]);
        step_re[i] = c;
        step_im[i] = s;
    }
    let (mut pr, mut pi) = (vec![0.0; m], vec![0.0; m]);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        if j % RESEED == 0 {
            let z = z0 + h * j as f64;
            for i in 0..m {
                let (c, s) = unit_phase(cubic[i] + z * xs[i]);
                pr[i] = c;
                pi[i] = s;
            }
        }
        let mut acc = 0.0;
        for i in 0..m {
            acc += ws[i] * pr[i];
            let re = pr[i] * step_re[i] - pi[i] * step_im[i];
            let im = pr[i] * step_im[i] + pi[i] * step_re[i];
            pr[i] = re;
            pi[i] = im;
        }
        out.push(2.0 * acc);
    }
    out
}

pub(crate) const RESEED: usize = 128;
