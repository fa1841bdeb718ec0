use super::{check_modulus, cube_mod};
use crate::Result;
use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// The `q`-th roots of unity `e_q(k)`, `0 <= k < q`.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(q: u64) -> Self {
        let roots = (0..q)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / q as f64))
            .collect();
        Self { roots }
    }

    pub fn modulus(&self) -> u64 {
        self.roots.len() as u64
    }

    /// `e_q(k)` for any integer `k`.
    #[inline]
    pub fn get(&self, k: i128) -> Complex64 {
        let q = self.roots.len() as i128;
        self.roots[k.rem_euclid(q) as usize]
    }
}

/// Direct `q`-term evaluation of `S(q, a1, a2)`.
pub fn eval_s(q: u64, a1: i64, a2: i64) -> Result<Complex64> {
    check_modulus(q)?;
    let roots = RootTable::new(q);
    let qi = q as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..=q as i128 {
        let r3 = r * r % qi * r % qi;
        acc += roots.get(a1 as i128 * r3 + a2 as i128 * r);
    }
    Ok(acc)
}

/// Every column `b mod q` of `S(q, a, .)`, from one inverse DFT of
/// `(e_q(a r^3))_r`. Index `b = 0` is the `b = q` column.
pub(crate) fn column(q: u64, a: u64, roots: &RootTable, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..q)
        .map(|r| roots.get((a % q * cube_mod(r, q)) as i128))
        .collect();
    planner.plan_fft_inverse(q as usize).process(&mut buf);
    buf
}

/// Splits the units mod `q` into cosets of the subgroup of unit cubes.
///
/// Every power sum `sum_b S(q, a, b)^k` is constant on such a coset (the
/// substitution `r -> u r` moves `u^3` from `a` into `b`). Returns
/// `(representative, coset size)` in increasing order of representative.
pub fn cube_classes(q: u64) -> Vec<(u64, u64)> {
    if q == 1 {
        return vec![(1, 1)];
    }
    let units: Vec<u64> = (1..q).filter(|a| a.gcd(&q) == 1).collect();
    let mut is_cube = vec![false; q as usize];
    for &u in &units {
        is_cube[cube_mod(u, q) as usize] = true;
    }
    let cubes: Vec<u64> = (0..q).filter(|&c| is_cube[c as usize]).collect();
    let mut seen = vec![false; q as usize];
    let mut out = Vec::new();
    for &a in &units {
        if seen[a as usize] {
            continue;
        }
        for &c in &cubes {
            seen[(a * c % q) as usize] = true;
        }
        out.push((a, cubes.len() as u64));
    }
    out
}

/// All values `S(q, a, b)` for units `a` and every `b`, batch computed.
#[derive(Debug, Clone)]
pub struct ExpSumTable {
    q: u64,
    units: Vec<u64>,
    columns: Vec<Vec<Complex64>>,
}

impl ExpSumTable {
    pub fn new(q: u64) -> Result<Self> {
        check_modulus(q)?;
        let roots = RootTable::new(q);
        let mut planner = FftPlanner::new();
        let units: Vec<u64> = (1..=q).filter(|a| a.gcd(&q) == 1).collect();
        let columns = units
            .iter()
            .map(|&a| column(q, a, &roots, &mut planner))
            .collect();
        Ok(Self { q, units, columns })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// The residues `a in [1, q]` coprime to `q`.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    /// `S(q, a, b)`; `a` must be a unit, `b` is taken mod `q`.
    pub fn get(&self, a: u64, b: i64) -> Option<Complex64> {
        let i = self.units.binary_search(&a).ok()?;
        Some(self.columns[i][b.rem_euclid(self.q as i64) as usize])
    }

    /// `S(q, a, b)` for `b = 0..q`.
    pub fn column(&self, a: u64) -> Option<&[Complex64]> {
        let i = self.units.binary_search(&a).ok()?;
        Some(&self.columns[i])
    }
}

/// `max |S(q, a, b)| / q^(2/3)` over units `a` and all `b`.
pub fn hua_ratio(q: u64) -> Result<f64> {
    check_modulus(q)?;
    let roots = RootTable::new(q);
    let mut planner = FftPlanner::new();
    let mut best = 0.0f64;
    // |S| over all b is a permutation of itself across a cube coset
    for (a, _) in cube_classes(q) {
        for s in column(q, a, &roots, &mut planner) {
            best = best.max(s.norm());
        }
    }
    Ok(best / (q as f64).powf(2.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn trivial_values() {
        assert!((eval_s(1, 0, 0).unwrap() - 1.0).norm() < 1e-15);
        for q in 1..20 {
            assert!((eval_s(q, 0, 0).unwrap() - q as f64).norm() < 1e-12);
        }
        assert!(eval_s(2, 1, 0).unwrap().norm() < 1e-15);
        assert!((eval_s(2, 1, 1).unwrap() - 2.0).norm() < 1e-15);
    }

    #[test]
    fn batch_matches_direct() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [1u64, 2, 3, 7, 9, 12, 27, 64, 97, 120, 199, 200] {
            let table = ExpSumTable::new(q).unwrap();
            for _ in 0..10 {
                let a = table.units()[rng.gen_range(0..table.units().len())];
                let b = rng.gen_range(0..=q as i64);
                let direct = eval_s(q, a as i64, b).unwrap();
                let batch = table.get(a, b).unwrap();
                assert!((direct - batch).norm() <= 1e-9 * q as f64, "q={q} a={a} b={b}");
            }
        }
    }

    #[test]
    fn table_invariants() {
        for q in [5u64, 8, 9, 14] {
            let t = ExpSumTable::new(q).unwrap();
            for &a in t.units() {
                let s0 = eval_s(q, a as i64, 0).unwrap();
                assert!((t.get(a, q as i64).unwrap() - s0).norm() < 1e-10);
                for b in 0..q as i64 {
                    let s = t.get(a, b).unwrap();
                    assert!(s.norm() <= q as f64 + 1e-9);
                    let mirrored = t.get(q - a, q as i64 - b).unwrap_or(s.conj());
                    assert!((mirrored - s.conj()).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn cube_classes_partition_units() {
        for q in [2u64, 7, 9, 13, 27, 35, 91] {
            let total: u64 = cube_classes(q).iter().map(|c| c.1).sum();
            assert_eq!(total, crate::numeric::euler_phi(q));
        }
        // 7 = 1 mod 3: three cube classes; 5 = 2 mod 3: one
        assert_eq!(cube_classes(7).len(), 3);
        assert_eq!(cube_classes(5).len(), 1);
    }

    #[test]
    fn hua_ratio_is_modest() {
        for q in [2u64, 9, 49, 128, 343] {
            let r = hua_ratio(q).unwrap();
            assert!(r > 0.0 && r < 3.0, "q={q} ratio={r}");
        }
    }
}
