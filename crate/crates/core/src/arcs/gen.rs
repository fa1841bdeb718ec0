use super::ArcSet;
use crate::archimedean::eval_v;
use crate::expsum::eval_s;
use crate::numeric::{batch_rng, unit_phase};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

/// `t * k` reduced mod 1 without losing the low bits of a large product.
#[inline]
fn frac_product(t: f64, k: f64) -> f64 {
    let p = t * k;
    let err = t.mul_add(k, -p);
    (p - p.round()) + err
}

fn f_complex(alpha: f64, beta: f64, bound: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let b = bound as i64;
    for x in -b..=b {
        let xf = x as f64;
        let (c, s) = unit_phase(frac_product(alpha, xf * xf * xf) + frac_product(beta, xf));
        acc += Complex64::new(c, s);
    }
    acc
}

/// `f(alpha, beta) = sum_{|x| <= B} e(alpha x^3 + beta x)`, real by the
/// symmetry `x -> -x`.
pub fn eval_f(alpha: f64, beta: f64, bound: u32) -> Result<f64> {
    let z = f_complex(alpha, beta, bound);
    let limit = 1e-9 * (bound as f64).max(1.0);
    if z.im.abs() > limit {
        return Err(Error::Tolerance {
            what: "imaginary part of f",
            value: z.im.abs(),
            limit,
        });
    }
    Ok(z.re)
}

/// The major-arc approximant `q^-1 S(q, a, b) v(alpha - a/q, beta - b/q; B)`
/// with `b/q` the nearest fraction, `-1/(2q) <= beta - b/q < 1/(2q)`.
pub fn eval_fstar(alpha: f64, beta: f64, bound: u32, arcs: &ArcSet) -> Result<Complex64> {
    let arc = arcs.arc_containing(alpha).ok_or(Error::NotOnMajorArc(alpha))?;
    let (q, a) = (arc.q, arc.a);
    let qf = q as f64;
    let x = alpha.rem_euclid(1.0);
    let b = (qf * beta + 0.5).floor();
    let s = eval_s(q, a as i64, b as i64)?;
    let v = eval_v(x - a as f64 / qf, beta - b / qf, bound as f64)?;
    Ok(s * v / qf)
}

/// `|f - f*|` at one point of a major arc.
pub fn fstar_deviation(alpha: f64, beta: f64, bound: u32, arcs: &ArcSet) -> Result<f64> {
    let f = f_complex(alpha, beta, bound);
    Ok((f - eval_fstar(alpha, beta, bound, arcs)?).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FStarSample {
    pub bound: u32,
    pub samples: u64,
    /// `max |f - f*| / q^{2/3}` over the samples.
    pub max_scaled_deviation: f64,
}

/// Samples `alpha` uniformly on the major arcs and `beta` on `[0, 1)`.
pub fn fstar_sweep(bound: u32, arcs: &ArcSet, samples: u64, seed: u64) -> Result<FStarSample> {
    let mut rng = batch_rng(seed, 0);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let arc = arcs.arcs[rng.gen_range(0..arcs.arcs.len())];
        let mut alpha = arc.center() + arc.half_width * (2.0 * rng.gen::<f64>() - 1.0);
        if alpha >= 1.0 {
            alpha -= 1.0;
        }
        if alpha < 0.0 {
            alpha += 1.0;
        }
        let beta: f64 = rng.gen();
        let d = fstar_deviation(alpha, beta, bound, arcs)?;
        best = best.max(d / (arc.q as f64).powf(2.0 / 3.0));
    }
    Ok(FStarSample {
        bound,
        samples,
        max_scaled_deviation: best,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylSample {
    pub bound: u32,
    pub samples: u64,
    pub gamma_grid: u64,
    pub seed: u64,
    pub max_abs_f: f64,
    /// `max_abs_f / B^{1 - delta/4}`.
    pub ratio: f64,
}

/// `max |f(alpha, gamma)|` over `alpha` drawn from the minor arcs and
/// `gamma` on a uniform grid of `[0, 1)`.
pub fn weyl_sup_sample(bound: u32, arcs: &ArcSet, samples: u64, gamma_grid: u64, seed: u64) -> Result<WeylSample> {
    if arcs.minor.is_empty() {
        return Err(Error::invalid("the minor arcs are empty at this B"));
    }
    if gamma_grid == 0 {
        return Err(Error::invalid("gamma grid must be non-empty"));
    }
    let lengths: Vec<f64> = arcs.minor.iter().map(|i| i.length()).collect();
    let total: f64 = lengths.iter().sum();
    let mut rng = batch_rng(seed, 0);
    let mut best = 0.0f64;
    for _ in 0..samples {
        // pick a minor interval by length, then a point inside it
        let mut u = rng.gen::<f64>() * total;
        let mut k = 0;
        while k + 1 < lengths.len() && u >= lengths[k] {
            u -= lengths[k];
            k += 1;
        }
        let alpha = arcs.minor[k].lo.value() + u.min(lengths[k]);
        for g in 0..gamma_grid {
            let gamma = g as f64 / gamma_grid as f64;
            best = best.max(f_complex(alpha, gamma, bound).norm());
        }
    }
    Ok(WeylSample {
        bound,
        samples,
        gamma_grid,
        seed,
        max_abs_f: best,
        ratio: best / (bound as f64).powf(1.0 - arcs.delta / 4.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{build_major_arcs, DEFAULT_DELTA};

    #[test]
    fn trivial_values() {
        assert_eq!(eval_f(0.0, 0.0, 7).unwrap(), 15.0);
        // x^3 = x mod 2 and the sum over |x| <= B of (-1)^x is 1 for even B
        assert!((eval_f(0.5, 0.0, 10).unwrap() - 1.0).abs() < 1e-12);
        assert!((eval_f(0.5, 0.0, 9).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sign_symmetry() {
        let mut rng = batch_rng(5, 0);
        for _ in 0..50 {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            let x = eval_f(a, b, 40).unwrap();
            let y = eval_f(-a, -b, 40).unwrap();
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn fstar_at_center() {
        let arcs = build_major_arcs(100.0, DEFAULT_DELTA).unwrap();
        let fs = eval_fstar(0.0, 0.0, 100, &arcs).unwrap();
        assert!((fs.re - 200.0).abs() < 1e-12);
        assert!((fstar_deviation(0.0, 0.0, 100, &arcs).unwrap() - 1.0).abs() < 1e-9);
        assert!(matches!(eval_fstar(0.3, 0.0, 100, &arcs), Err(Error::NotOnMajorArc(_))));
    }

    #[test]
    fn weyl_bounded_by_trivial() {
        let arcs = build_major_arcs(30.0, DEFAULT_DELTA).unwrap();
        let w = weyl_sup_sample(30, &arcs, 20, 16, 1).unwrap();
        assert!(w.max_abs_f <= 61.0 + 1e-9);
        let again = weyl_sup_sample(30, &arcs, 20, 16, 1).unwrap();
        assert_eq!(w, again);
    }
}
