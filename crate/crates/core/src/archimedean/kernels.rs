//! The Fejer-type kernel pair and the trapezoidal majorant/minorant of a
//! box indicator built from it.

use crate::numeric::{sinc, CompensatedSum, GaussLegendre};
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("kernel width {eta} outside (0, 1)")))
    }
}

/// `w_eta(b) = eta (sin(pi eta b) / (pi eta b))^2`.
pub fn w(eta: f64, beta: f64) -> f64 {
    eta * sinc(eta * beta).powi(2)
}

/// `max(0, 1 - |g|/eta)`, the Fourier transform of [`w`].
pub fn w_hat(eta: f64, gamma: f64) -> f64 {
    (1.0 - gamma.abs() / eta).max(0.0)
}

/// 1 on `[-eta, eta]`, linear down to 0 at `|g| = eta + delta`.
pub fn w_trapezoid(eta: f64, delta: f64, gamma: f64) -> f64 {
    let g = gamma.abs();
    if g <= eta {
        1.0
    } else if g < eta + delta {
        1.0 - (g - eta) / delta
    } else {
        0.0
    }
}

/// The same trapezoid as a combination of two triangles:
/// `(1 + eta/delta) w_hat_{eta+delta} - (eta/delta) w_hat_eta`.
pub fn w_trapezoid_from_triangles(eta: f64, delta: f64, gamma: f64) -> f64 {
    (1.0 + eta / delta) * w_hat(eta + delta, gamma) - (eta / delta) * w_hat(eta, gamma)
}

/// Majorant of the indicator of `[-eta, eta]`.
pub fn w_plus(eta: f64, gamma: f64) -> f64 {
    w_trapezoid(eta, eta * eta, gamma)
}

/// Minorant of the indicator of `[-eta, eta]`.
pub fn w_minus(eta: f64, gamma: f64) -> f64 {
    w_trapezoid(eta - eta * eta, eta * eta, gamma)
}

/// `(coefficient, width)` pairs with `W = sum c w_hat_width`.
pub fn w_plus_terms(eta: f64) -> [(f64, f64); 2] {
    [(1.0 + 1.0 / eta, eta + eta * eta), (-1.0 / eta, eta)]
}

pub fn w_minus_terms(eta: f64) -> [(f64, f64); 2] {
    [(1.0 / eta, eta), (1.0 - 1.0 / eta, eta - eta * eta)]
}

/// Numerical `int w_eta(b) e(-b g) db`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCheck {
    pub eta: f64,
    pub gamma: f64,
    pub numerical: f64,
    pub exact: f64,
}

/// Integrates `w_eta(b) cos(2 pi g b)` over `[-Z, Z]` with Gauss panels of
/// unit width and adds the tail beyond `Z` in closed form to leading order.
///
/// Writing `sin^2 = (1 - cos)/2` the integrand is a sum of three
/// `cos(2 pi nu b) / b^2` terms; a term with `nu = 0` has tail `1/Z`, the
/// others `-sin(2 pi nu Z)/(2 pi nu Z^2)`.
pub fn kernel_fourier_check(eta: f64, gamma: f64, cutoff: f64) -> Result<KernelCheck> {
    check_eta(eta)?;
    if cutoff.is_nan() || cutoff < 10.0 {
        return Err(Error::invalid("cutoff must be at least 10"));
    }
    let gl = GaussLegendre::new(10);
    let panels = cutoff.ceil() as usize;
    let z = panels as f64;
    let mut acc = CompensatedSum::new();
    for k in 0..panels {
        let a = k as f64;
        acc.add(gl.integrate(a, a + 1.0, |b| w(eta, b) * (2.0 * PI * gamma * b).cos()));
    }
    let tail_term = |nu: f64| {
        if nu.abs() < 1e-12 {
            1.0 / z
        } else {
            -(2.0 * PI * nu * z).sin() / (2.0 * PI * nu * z * z)
        }
    };
    let tail = (tail_term(gamma) - 0.5 * tail_term(gamma + eta) - 0.5 * tail_term(gamma - eta))
        / (2.0 * PI * PI * eta);
    Ok(KernelCheck {
        eta,
        gamma,
        numerical: 2.0 * (acc.value() + tail),
        exact: w_hat(eta, gamma),
    })
}
