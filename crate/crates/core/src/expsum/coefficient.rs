use super::check_modulus;
use super::sums::{column, cube_classes, RootTable};
use crate::numeric::{factorize, CompensatedSum};
use crate::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;
use serde::Serialize;
use std::collections::HashMap;

/// `A(q) = q^-10 sum_{(a,q)=1} (sum_b S(q,a,b)^6) (sum_c S(q,a,c)^4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCoefficient {
    pub q: u64,
    pub value: f64,
    /// Largest imaginary residue seen while accumulating; zero when the
    /// value was assembled by multiplicativity from already-checked parts.
    pub imag_residue: f64,
}

/// Per-unit contribution `(sum_b s^6)(sum_c s^4)` with `s = S/q`.
fn unit_term(q: u64, a: u64, roots: &RootTable, planner: &mut FftPlanner<f64>) -> Complex64 {
    let inv = 1.0 / q as f64;
    let mut p6 = Complex64::new(0.0, 0.0);
    let mut p4 = Complex64::new(0.0, 0.0);
    for s in column(q, a, roots, planner) {
        let s = s * inv;
        let s2 = s * s;
        let s4 = s2 * s2;
        p4 += s4;
        p6 += s4 * s2;
    }
    p6 * p4
}

fn finish(q: u64, re: f64, im: f64) -> Result<SeriesCoefficient> {
    let limit = 1e-9 * (q as f64).powi(2);
    if im.abs() > limit {
        return Err(Error::Tolerance {
            what: "imaginary part of A(q)",
            value: im.abs(),
            limit,
        });
    }
    Ok(SeriesCoefficient {
        q,
        value: re,
        imag_residue: im.abs(),
    })
}

/// `A(q)` summed over every unit `a` separately. No multiplicativity and no
/// class reduction; used as the reference for both.
pub fn eval_a_direct(q: u64) -> Result<SeriesCoefficient> {
    check_modulus(q)?;
    let roots = RootTable::new(q);
    let mut planner = FftPlanner::new();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for a in (1..=q).filter(|a| a.gcd(&q) == 1) {
        let t = unit_term(q, a, &roots, &mut planner);
        re.add(t.re);
        im.add(t.im);
    }
    finish(q, re.value(), im.value())
}

/// `A(q)` using one representative per cube coset of units.
fn eval_a_classes(q: u64, planner: &mut FftPlanner<f64>) -> Result<SeriesCoefficient> {
    check_modulus(q)?;
    let roots = RootTable::new(q);
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (a, size) in cube_classes(q) {
        let t = unit_term(q, a, &roots, planner) * size as f64;
        re.add(t.re);
        im.add(t.im);
    }
    finish(q, re.value(), im.value())
}

/// Memoized prime-power coefficients; composite `q` is assembled by
/// multiplicativity.
pub struct CoefficientCache {
    prime_powers: HashMap<u64, SeriesCoefficient>,
    planner: FftPlanner<f64>,
}

impl std::fmt::Debug for CoefficientCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoefficientCache")
            .field("cached", &self.prime_powers.len())
            .finish()
    }
}

impl Default for CoefficientCache {
    fn default() -> Self {
        Self::new()
    }
}

impl CoefficientCache {
    pub fn new() -> Self {
        Self {
            prime_powers: HashMap::new(),
            planner: FftPlanner::new(),
        }
    }

    pub fn get(&mut self, q: u64) -> Result<SeriesCoefficient> {
        check_modulus(q)?;
        let mut value = 1.0;
        let mut imag_residue = 0.0f64;
        for pp in factorize(q) {
            let pk = pp.value();
            let c = match self.prime_powers.get(&pk) {
                Some(c) => *c,
                None => {
                    let c = eval_a_classes(pk, &mut self.planner)?;
                    self.prime_powers.insert(pk, c);
                    c
                }
            };
            value *= c.value;
            imag_residue = imag_residue.max(c.imag_residue);
        }
        Ok(SeriesCoefficient {
            q,
            value,
            imag_residue,
        })
    }
}

pub fn eval_a(q: u64) -> Result<SeriesCoefficient> {
    CoefficientCache::new().get(q)
}

/// `A(1), ..., A(Q)`.
pub fn series_terms(big_q: u64) -> Result<Vec<SeriesCoefficient>> {
    let mut cache = CoefficientCache::new();
    (1..=big_q).map(|q| cache.get(q)).collect()
}

/// The truncated singular series `sum_{q <= Q} A(q)`.
pub fn singular_series(big_q: u64) -> Result<f64> {
    if big_q == 0 {
        return Err(Error::invalid("Q must be at least 1"));
    }
    Ok(series_terms(big_q)?
        .into_iter()
        .map(|c| c.value)
        .collect::<CompensatedSum>()
        .value())
}
