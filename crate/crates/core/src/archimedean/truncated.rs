use super::v::v1_progression;
use super::QuadConfig;
use crate::numeric::{CompensatedSum, GaussLegendre};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// `I(q)` for the box `[-B, B]` and cutoff exponent `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedSingularIntegral {
    pub q: u64,
    pub bound: f64,
    pub delta: f64,
    pub value: f64,
    /// `value / (2B)^5`, to be compared with `J(1)`.
    pub normalized: f64,
    /// Half-width actually used for the linear frequencies after scaling
    /// to the unit box; it is `B/q` unless that exceeds the profile window.
    pub linear_limit: f64,
}

/// `I(q) = int_{|b1| <= B^{delta-3}} int_{|b2|,|b3| <= 1/(2q)} v(b1,b2)^6 v(b1,b3)^4`.
///
/// Scaling to the unit box turns this into
/// `(2B)^5 int_{|xi| <= 8 B^delta} int_{|eta|,|zeta| <= B/q} v1^6 v1^4`.
/// Linear limits beyond `3/4 * 8B^delta + R_eta` are clipped there; the
/// discarded part is below the truncation error of the singular integral.
pub fn i_trunc(q: u64, bound: f64, delta: f64, cfg: &QuadConfig) -> Result<TruncatedSingularIntegral> {
    cfg.validate()?;
    if !(bound > 1.0 && delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("need B > 1 and 0 < delta < 1"));
    }
    if q == 0 || q as f64 > bound.powf(delta) {
        return Err(Error::invalid(format!("q = {q} outside [1, B^delta]")));
    }
    let xi_max = 8.0 * bound.powf(delta);
    let linear_limit = (bound / q as f64).min(0.75 * xi_max + cfg.inner_radius);
    let gl = GaussLegendre::new(cfg.panel_nodes);

    // Gauss panels of width 1/2 in the linear variable; nodes with the same
    // offset inside their panel form a progression of step 1/2
    let zpanels = (2.0 * linear_limit / 0.5).ceil() as usize;
    let zwidth = 2.0 * linear_limit / zpanels as f64;
    let (xi_nodes, xi_weights) = gl.panel_rule(0.0, xi_max, (xi_max / 0.5).ceil() as usize);

    let terms: Vec<f64> = xi_nodes
        .par_iter()
        .zip(&xi_weights)
        .map(|(&xi, &wx)| {
            let (mut m6, mut m4) = (CompensatedSum::new(), CompensatedSum::new());
            for (t, wt) in gl.nodes().iter().zip(gl.weights()) {
                let z0 = -linear_limit + zwidth * 0.5 * (t + 1.0);
                let w = wt * zwidth * 0.5;
                for v in v1_progression(xi, z0, zwidth, zpanels, &gl) {
                    let v2 = v * v;
                    m4.add(w * v2 * v2);
                    m6.add(w * v2 * v2 * v2);
                }
            }
            wx * m6.value() * m4.value()
        })
        .collect();
    // even in xi
    let unit = 2.0 * terms.into_iter().collect::<CompensatedSum>().value();
    let scale = (2.0 * bound).powi(5);
    Ok(TruncatedSingularIntegral {
        q,
        bound,
        delta,
        value: scale * unit,
        normalized: unit,
        linear_limit,
    })
}
