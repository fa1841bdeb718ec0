//! Monte Carlo Siegel volumes `M_inf(eta)`: the measure of the points of
//! `[-1/2, 1/2]^10` with `|sum x^3| < eta`, `|x1+..+x6| < eta` and
//! `|x7+..+x10| < eta`.

use super::QuadConfig;
use crate::numeric::batch_rng;
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

const BATCH: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SiegelVolume {
    pub eta: f64,
    pub volume: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl SiegelVolume {
    /// `(2 eta)^{-3} M_inf(eta)` and its standard error.
    pub fn normalized(&self) -> (f64, f64) {
        let s = (2.0 * self.eta).powi(3);
        (self.volume / s, self.stderr / s)
    }
}

fn overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0.0)
}

/// Estimates `M_inf(eta)`.
///
/// Eight coordinates are uniform. `x6` is drawn uniformly from the part of
/// its box where the first linear form is small, weighted by that length.
/// `x10` is integrated exactly: the admissible set is the intersection of
/// the window for the second linear form with the preimage of the cubic
/// condition, an interval since `x -> x^3` is monotone.
pub fn m_infinity(eta: f64, samples: u64, seed: u64) -> Result<SiegelVolume> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid(format!("eta = {eta} outside (0, 1)")));
    }
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let batches = samples.div_ceil(BATCH);
    let sums: Vec<(f64, f64, u64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let n = BATCH.min(samples - b * BATCH);
            let mut rng = batch_rng(seed, b);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let mut lin1 = 0.0;
                let mut cubes = 0.0;
                for _ in 0..5 {
                    let x: f64 = rng.gen::<f64>() - 0.5;
                    lin1 += x;
                    cubes += x * x * x;
                }
                let w6 = (-lin1 - eta, -lin1 + eta);
                let l6 = overlap(w6, (-0.5, 0.5));
                // the draws below are made even when l6 = 0 so that every
                // sample consumes the same amount of randomness
                let u6: f64 = rng.gen();
                let mut lin2 = 0.0;
                for _ in 0..3 {
                    let x: f64 = rng.gen::<f64>() - 0.5;
                    lin2 += x;
                    cubes += x * x * x;
                }
                if l6 == 0.0 {
                    continue;
                }
                let x6 = w6.0.max(-0.5) + l6 * u6;
                cubes += x6 * x6 * x6;
                let w10 = overlap(
                    (-lin2 - eta, -lin2 + eta),
                    ((-cubes - eta).cbrt().max(-0.5), (-cubes + eta).cbrt().min(0.5)),
                );
                let v = l6 * w10;
                s1 += v;
                s2 += v * v;
            }
            (s1, s2, n)
        })
        .collect();
    let (mut s1, mut s2, mut n) = (0.0, 0.0, 0u64);
    for (a, b, c) in sums {
        s1 += a;
        s2 += b;
        n += c;
    }
    let nf = n as f64;
    let mean = s1 / nf;
    let var = (s2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0).max(1.0);
    Ok(SiegelVolume {
        eta,
        volume: mean,
        stderr: (var / nf).sqrt(),
        samples: n,
        seed,
    })
}

/// Weighted least-squares line `y = a + b t`; returns `(a, b, se(a))`.
fn weighted_line(t: &[f64], y: &[f64], se: &[f64]) -> (f64, f64, f64) {
    let (mut sw, mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..t.len() {
        let w = 1.0 / se[i].max(1e-300).powi(2);
        sw += w;
        st += w * t[i];
        sy += w * y[i];
        stt += w * t[i] * t[i];
        sty += w * t[i] * y[i];
    }
    let det = sw * stt - st * st;
    let b = (sw * sty - st * sy) / det;
    let a = (sy - b * st) / sw;
    (a, b, (stt / det).sqrt())
}

/// Extrapolation of `(2 eta)^{-3} M_inf(eta)` to `eta = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiegelExtrapolation {
    pub volumes: Vec<SiegelVolume>,
    /// Intercept of a weighted line in `eta`; the primary estimate.
    pub linear: f64,
    pub linear_stderr: f64,
    pub linear_slope: f64,
    /// Intercept of a weighted line in `eta^{1/36}`. Recorded only: over
    /// any feasible range of `eta` this variable barely moves, so the
    /// intercept is a long extrapolation.
    pub root36: f64,
    pub root36_stderr: f64,
}

pub fn siegel_extrapolation(cfg: &QuadConfig) -> Result<SiegelExtrapolation> {
    cfg.validate()?;
    if cfg.eta_sequence.len() < 2 {
        return Err(Error::invalid("extrapolation needs at least two thicknesses"));
    }
    let volumes = cfg
        .eta_sequence
        .iter()
        .map(|&eta| m_infinity(eta, cfg.mc_samples, cfg.mc_seed))
        .collect::<Result<Vec<_>>>()?;
    let (y, se): (Vec<f64>, Vec<f64>) = volumes.iter().map(|v| v.normalized()).unzip();
    let t1: Vec<f64> = cfg.eta_sequence.clone();
    let t36: Vec<f64> = t1.iter().map(|e| e.powf(1.0 / 36.0)).collect();
    let (linear, linear_slope, linear_stderr) = weighted_line(&t1, &y, &se);
    let (root36, _, root36_stderr) = weighted_line(&t36, &y, &se);
    Ok(SiegelExtrapolation {
        volumes,
        linear,
        linear_stderr,
        linear_slope,
        root36,
        root36_stderr,
    })
}
