use super::{check_modulus, cube_mod};
use crate::lattice::{check_budget, RepCounts, RepKind};
use crate::numeric::is_prime;
use crate::{Error, Result};

/// Default cap on `q^3`, the cost of the mod-`q` slice joins.
pub const DEFAULT_MP_BUDGET: u128 = 64_000_000;

/// Counts of triples mod `q` by (linear sum, cubic sum), row-major in the
/// linear sum.
fn triple_table(q: usize) -> Vec<u64> {
    let cubes: Vec<usize> = (0..q as u64).map(|x| cube_mod(x, q as u64) as usize).collect();
    // pairs first, then add the third coordinate
    let mut pairs = vec![0u64; q * q];
    for x in 0..q {
        for y in 0..q {
            let s = (x + y) % q;
            let c = (cubes[x] + cubes[y]) % q;
            pairs[s * q + c] += 1;
        }
    }
    let mut triples = vec![0u64; q * q];
    for s in 0..q {
        for c in 0..q {
            let n = pairs[s * q + c];
            if n == 0 {
                continue;
            }
            for z in 0..q {
                triples[((s + z) % q) * q + (c + cubes[z]) % q] += n;
            }
        }
    }
    triples
}

/// Mod-`q` analogues of `r6` and `v`: counts of 6-tuples (resp. 4-tuples)
/// mod `q` with zero linear sum, keyed by cubic sum in `[0, q)`.
pub fn congruence_reps(q: u64, budget: u128) -> Result<(RepCounts, RepCounts)> {
    check_modulus(q)?;
    check_budget("mod-q slice join", (q as u128).pow(3), budget)?;
    let qs = q as usize;
    let h3 = triple_table(qs);

    let mut r6 = vec![0u64; qs];
    for s in 0..qs {
        let neg = (qs - s) % qs;
        let row = &h3[s * qs..(s + 1) * qs];
        let other = &h3[neg * qs..(neg + 1) * qs];
        for (c1, &n1) in row.iter().enumerate() {
            if n1 == 0 {
                continue;
            }
            for (c2, &n2) in other.iter().enumerate() {
                let k = c1 + c2;
                r6[if k >= qs { k - qs } else { k }] += n1 * n2;
            }
        }
    }

    let mut r4 = vec![0u64; qs];
    for s in 0..qs {
        // fourth coordinate is -s, contributing -s^3
        let shift = (qs - cube_mod(s as u64, q) as usize) % qs;
        for c in 0..qs {
            r4[(c + shift) % qs] += h3[s * qs + c];
        }
    }
    Ok((
        RepCounts::dense(RepKind::R6Mod { q }, 0, r6),
        RepCounts::dense(RepKind::R4Mod { q }, 0, r4),
    ))
}

/// `M_p(h)`: solutions of the system in `(Z/p^h)^10`.
pub fn count_mp(p: u64, h: u32) -> Result<u128> {
    count_mp_with_budget(p, h, DEFAULT_MP_BUDGET)
}

pub fn count_mp_with_budget(p: u64, h: u32, budget: u128) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let q = p
        .checked_pow(h)
        .ok_or_else(|| Error::invalid(format!("{p}^{h} overflows")))?;
    let (r6, r4) = congruence_reps(q, budget)?;
    let mut total = 0u128;
    for (n, c6) in r6.iter() {
        let m = (q as i64 - n) % q as i64;
        total += c6 as u128 * r4.get(m) as u128;
    }
    Ok(total)
}

/// `M_p(h)` by enumerating all of `(Z/q)^8` free coordinates.
pub fn count_mp_brute(q: u64) -> Result<u128> {
    check_modulus(q)?;
    check_budget("mod-q brute force", (q as u128).pow(8), 1 << 27)?;
    let mut y = [0u64; 8];
    let mut total = 0u128;
    loop {
        let x6 = (5 * q - y[..5].iter().sum::<u64>()) % q;
        let x10 = (3 * q - y[5..].iter().sum::<u64>()) % q;
        let c = y.iter().map(|&v| cube_mod(v, q)).sum::<u64>() + cube_mod(x6, q) + cube_mod(x10, q);
        if c % q == 0 {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == 8 {
                return Ok(total);
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
