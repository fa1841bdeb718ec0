use super::kernels::{w_minus_terms, w_plus_terms};
use super::profile::FourierProfile;
use crate::Result;
use serde::Serialize;

/// Integrals over the unit box of the products of trapezoids that bound
/// the indicator of the three thin slabs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub eta: f64,
    pub lower: f64,
    pub upper: f64,
    /// `U(eta, eta, eta)`.
    pub u_diagonal: f64,
}

impl Sandwich {
    /// Bounds on `(2 eta)^{-3} M_inf(eta)`.
    pub fn normalized(&self) -> (f64, f64) {
        let s = (2.0 * self.eta).powi(3);
        (self.lower / s, self.upper / s)
    }
}

/// Expands `prod_i W(F_i)` into the eight products of triangles
/// `prod_i c_i w_hat_{e_i}(F_i)`, each of which integrates to
/// `prod_i c_i e_i U(e_1, e_2, e_3)`.
fn expand(profile: &FourierProfile, terms: [(f64, f64); 2]) -> Result<f64> {
    let mut total = 0.0;
    for t1 in terms {
        for t2 in terms {
            for t3 in terms {
                let coef = t1.0 * t1.1 * t2.0 * t2.1 * t3.0 * t3.1;
                total += coef * profile.u_eta([t1.1, t2.1, t3.1])?;
            }
        }
    }
    Ok(total)
}

pub fn sandwich_check(profile: &FourierProfile, eta: f64) -> Result<Sandwich> {
    Ok(Sandwich {
        eta,
        lower: expand(profile, w_minus_terms(eta))?,
        upper: expand(profile, w_plus_terms(eta))?,
        u_diagonal: profile.u_eta([eta; 3])?,
    })
}
