use super::CountBound;
use crate::numeric::divisors;
use crate::{Error, Result};

/// `v(n)` for `n != 0` by back-solving `n = -3(x1+x2)(x2+x3)(x3+x1)`.
///
/// With `u = x1+x2`, `v = x2+x3`, `w = x3+x1` and `uvw = -n/3`, every
/// signed factorization with `u + v + w` even yields exactly one integer
/// triple, and `x4 = -(u+v+w)/2`. Factorizations of the wrong parity are
/// discarded.
pub fn count_v_divisor(n: i64, bound: CountBound) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid(
            "the divisor route is undefined for n = 0; use count_r4",
        ));
    }
    if n % 3 != 0 {
        return Ok(0);
    }
    let m = -n / 3;
    let abs_m = m.unsigned_abs();
    let ds = divisors(abs_m);
    let b = bound.b();
    let mut count = 0;
    for &du in &ds {
        let rest = abs_m / du;
        for &dv in ds.iter().take_while(|&&d| d <= rest) {
            if rest % dv != 0 {
                continue;
            }
            let dw = rest / dv;
            let (du, dv, dw) = (du as i64, dv as i64, dw as i64);
            // sign patterns with product sign equal to sign(m)
            for su in [1i64, -1] {
                for sv in [1i64, -1] {
                    let sw = m.signum() * su * sv;
                    let (u, v, w) = (su * du, sv * dv, sw * dw);
                    let total = u + v + w;
                    if total % 2 != 0 {
                        continue;
                    }
                    let x1 = (u - v + w) / 2;
                    let x2 = (u + v - w) / 2;
                    let x3 = (-u + v + w) / 2;
                    let x4 = -total / 2;
                    if [x1, x2, x3, x4].iter().all(|x| x.abs() <= b) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}
