use super::coefficient::CoefficientCache;
use super::MAX_MODULUS;
use crate::numeric::{is_prime, primes_up_to};
use crate::{Error, Result};
use serde::Serialize;

/// Partial p-adic density `sum_{h<=H} A(p^h)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDensity {
    pub p: u64,
    pub depth: u32,
    pub value: f64,
    /// `A(p^h)` for `h = 0..=depth`.
    pub terms: Vec<f64>,
    /// Heuristic size of `sum_{h>H} A(p^h)`; see [`chi_p`].
    pub tail_estimate: f64,
}

/// `sum_{h=0}^{H} A(p^h)`.
///
/// The tail is extrapolated, not bounded: the largest observed
/// `|A(p^h)| p^{5h/3}` is taken as the constant in an `A(q) ~ q^{-5/3}`
/// decay and summed over `h > H`.
pub fn chi_p(p: u64, depth: u32) -> Result<LocalDensity> {
    chi_p_cached(p, depth, &mut CoefficientCache::new())
}

pub(crate) fn chi_p_cached(p: u64, depth: u32, cache: &mut CoefficientCache) -> Result<LocalDensity> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    match p.checked_pow(depth) {
        Some(q) if q <= MAX_MODULUS => {}
        _ => {
            return Err(Error::Budget {
                what: "p-adic density modulus",
                needed: (p as u128).saturating_pow(depth),
                budget: MAX_MODULUS as u128,
            })
        }
    }
    let mut terms = Vec::with_capacity(depth as usize + 1);
    let mut q = 1u64;
    for _ in 0..=depth {
        terms.push(cache.get(q)?.value);
        q = q.saturating_mul(p);
    }
    let pf = p as f64;
    let decay = pf.powf(-5.0 / 3.0);
    let constant = terms
        .iter()
        .enumerate()
        .skip(1)
        .map(|(h, a)| a.abs() * pf.powf(5.0 * h as f64 / 3.0))
        .fold(if depth == 0 { 1.0 } else { 0.0 }, f64::max);
    let tail_estimate = constant * decay.powi(depth as i32 + 1) / (1.0 - decay);
    Ok(LocalDensity {
        p,
        depth,
        value: terms.iter().sum(),
        terms,
        tail_estimate,
    })
}

/// Truncated Euler product with its (heuristic) error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerProduct {
    pub value: f64,
    /// Combined local tails plus an extrapolation over primes `> P`.
    pub tail_estimate: f64,
    pub factors: Vec<LocalDensity>,
}

/// `prod_{p<=P} chi_p(p, H)`.
pub fn euler_product(big_p: u64, depth: u32) -> Result<EulerProduct> {
    product_over(big_p, |_| depth)
}

/// `prod_{p<=P} chi_p(p, H_p)` with `H_p` the largest depth keeping
/// `p^{H_p} <= max_modulus`.
pub fn euler_product_to_depth(big_p: u64, max_modulus: u64) -> Result<EulerProduct> {
    if max_modulus < 2 {
        return Err(Error::invalid("depth modulus must be at least 2"));
    }
    product_over(big_p, |p| {
        let mut h = 0;
        let mut q = p;
        while q <= max_modulus {
            h += 1;
            q = q.saturating_mul(p);
        }
        h
    })
}

fn product_over(big_p: u64, depth_of: impl Fn(u64) -> u32) -> Result<EulerProduct> {
    let mut cache = CoefficientCache::new();
    let mut factors = Vec::new();
    for p in primes_up_to(big_p) {
        factors.push(chi_p_cached(p, depth_of(p), &mut cache)?);
    }
    let value: f64 = factors.iter().map(|f| f.value).product();
    let mut rel_tail: f64 = factors.iter().map(|f| f.tail_estimate / f.value).sum();
    // chi_p = 1 + O(p^{-3/2}) with the constant fitted, then
    // integrate against the prime density beyond P; small primes carry
    // exceptional factors (3 above all), so the constant comes from p > P/2
    let upper: Vec<&LocalDensity> = factors.iter().filter(|f| 2 * f.p > big_p).collect();
    let c = upper
        .iter()
        .map(|f| (f.value - 1.0).abs() * (f.p as f64).powf(1.5))
        .fold(0.0, f64::max);
    let pf = (big_p.max(2) as f64).max(2.0);
    rel_tail += c * 2.0 / (pf.sqrt() * pf.ln());
    Ok(EulerProduct {
        value,
        tail_estimate: value * rel_tail,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::count_mp;

    #[test]
    fn small_depths() {
        assert_eq!(chi_p(5, 0).unwrap().value, 1.0);
        assert!((chi_p(2, 1).unwrap().value - 2.0).abs() < 1e-12);
        assert!((euler_product(2, 1).unwrap().value - 2.0).abs() < 1e-12);
        assert!(chi_p(4, 1).is_err());
        assert!(chi_p(2, 40).is_err());
    }

    #[test]
    fn matches_congruence_counts() {
        for (p, h) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let m = count_mp(p, h).unwrap() as f64 / (p as f64).powi(7 * h as i32);
            let chi = chi_p(p, h).unwrap().value;
            assert!((m - chi).abs() < 1e-9 * m.max(1.0), "p={p} h={h}: {m} vs {chi}");
        }
    }

    #[test]
    fn product_at_least_one() {
        let e = euler_product_to_depth(30, 256).unwrap();
        assert!(e.value >= 1.0);
        assert!(e.tail_estimate >= 0.0);
        for f in &e.factors {
            assert!(f.value >= 1.0 - f.tail_estimate);
        }
    }
}
