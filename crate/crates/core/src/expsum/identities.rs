use super::sums::{column, RootTable};
use super::{check_modulus, cube_mod};
use crate::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;

fn require_unit(q: u64, a: u64) -> Result<()> {
    check_modulus(q)?;
    if a.gcd(&q) != 1 {
        return Err(Error::invalid(format!("gcd({a}, {q}) != 1")));
    }
    Ok(())
}

/// Both sides of the fourth-moment identity
/// `sum_b S(q,a,b)^4 = q sum_{r1,r2,r3 mod q} e_q(-3a(r1+r2)(r2+r3)(r3+r1))`.
///
/// The right side is computed by counting how often each phase class
/// occurs, so only `q` distinct roots of unity are summed.
pub fn fourth_moment_identity(q: u64, a: u64) -> Result<(f64, f64)> {
    require_unit(q, a)?;
    let roots = RootTable::new(q);
    let lhs: Complex64 = column(q, a, &roots, &mut FftPlanner::new())
        .into_iter()
        .map(|s| s.powi(4))
        .sum();

    let mut hist = vec![0u64; q as usize];
    let coef = (3 * a) % q;
    for r1 in 0..q {
        for r2 in 0..q {
            let s12 = (r1 + r2) % q;
            for r3 in 0..q {
                let p = s12 * ((r2 + r3) % q) % q * ((r3 + r1) % q) % q;
                hist[((q - coef * p % q) % q) as usize] += 1;
            }
        }
    }
    let rhs: Complex64 = hist
        .iter()
        .enumerate()
        .map(|(k, &c)| roots.get(k as i128) * c as f64)
        .sum();
    Ok((lhs.re, q as f64 * rhs.re))
}

/// `sum over y in (Z/q)^k of e_q(a(sum y_i^3 - (sum y_i)^3))`, as a phase
/// histogram.
fn block_histogram(q: u64, a: u64, k: usize) -> Vec<u64> {
    let mut hist = vec![0u64; q as usize];
    let mut y = vec![0u64; k];
    loop {
        let s = y.iter().sum::<u64>() % q;
        let c = y.iter().map(|&v| cube_mod(v, q)).sum::<u64>() % q;
        let psi = (c + q - cube_mod(s, q)) % q;
        hist[(a % q * psi % q) as usize] += 1;
        let mut i = 0;
        loop {
            if i == k {
                return hist;
            }
            y[i] += 1;
            if y[i] < q {
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}

fn histogram_sum(roots: &RootTable, hist: &[u64]) -> Complex64 {
    hist.iter()
        .enumerate()
        .map(|(k, &c)| roots.get(k as i128) * c as f64)
        .sum()
}

/// `T(q, a) = sum_{y mod q} e_q(a Psi(y))` with
/// `Psi = sum_{i<=8} y_i^3 - (y_1+..+y_5)^3 - (y_6+y_7+y_8)^3`.
///
/// `Psi` separates into a 5-variable and a 3-variable block, so the sum is
/// the product of two block sums, each enumerated directly.
pub fn t_sum(q: u64, a: u64) -> Result<Complex64> {
    require_unit(q, a)?;
    crate::lattice::check_budget("T(q,a) enumeration", (q as u128).pow(5), 1 << 30)?;
    let roots = RootTable::new(q);
    Ok(histogram_sum(&roots, &block_histogram(q, a, 5))
        * histogram_sum(&roots, &block_histogram(q, a, 3)))
}

/// `T(q, a)` by the full 8-fold enumeration.
pub fn t_sum_brute(q: u64, a: u64) -> Result<Complex64> {
    require_unit(q, a)?;
    crate::lattice::check_budget("T(q,a) 8-fold enumeration", (q as u128).pow(8), 1 << 27)?;
    let roots = RootTable::new(q);
    let mut hist = vec![0u64; q as usize];
    let mut y = [0u64; 8];
    loop {
        let s1 = y[..5].iter().sum::<u64>();
        let s2 = y[5..].iter().sum::<u64>();
        let c = y.iter().map(|&v| cube_mod(v, q)).sum::<u64>();
        let psi = (c + 2 * q - cube_mod(s1, q) - cube_mod(s2, q)) % q;
        hist[(a % q * psi % q) as usize] += 1;
        let mut i = 0;
        loop {
            if i == 8 {
                return Ok(histogram_sum(&roots, &hist));
            }
            y[i] += 1;
            if y[i] < q {
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::eval_a_direct;

    #[test]
    fn fourth_moment_small_cases() {
        assert_eq!(fourth_moment_identity(1, 1).unwrap(), (1.0, 1.0));
        let (l, r) = fourth_moment_identity(2, 1).unwrap();
        assert!((l - 16.0).abs() < 1e-12 && (r - 16.0).abs() < 1e-12);
        assert!(fourth_moment_identity(6, 3).is_err());
    }

    #[test]
    fn separable_t_matches_brute() {
        for q in 1..=5u64 {
            for a in (1..=q).filter(|a| a.gcd(&q) == 1) {
                let d = t_sum(q, a).unwrap() - t_sum_brute(q, a).unwrap();
                assert!(d.norm() < 1e-6, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn t_sums_give_a() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let total: f64 = (1..=q)
                .filter(|a| a.gcd(&q) == 1)
                .map(|a| t_sum(q, a).unwrap().re)
                .sum::<f64>()
                / (q as f64).powi(8);
            let direct = eval_a_direct(q).unwrap().value;
            assert!((total - direct).abs() < 1e-9, "q={q}: {total} vs {direct}");
        }
    }
}
