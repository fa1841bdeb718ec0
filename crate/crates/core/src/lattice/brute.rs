//! Direct enumeration oracles. These share no code with the slice-join and
//! divisor routes and are only practical for small `B`.

use super::CountBound;
use std::collections::BTreeMap;

/// `v(n)` by four nested loops over `[-B, B]^4`.
pub fn r4_nested(bound: CountBound) -> BTreeMap<i64, u64> {
    let b = bound.b();
    let mut out = BTreeMap::new();
    for x1 in -b..=b {
        for x2 in -b..=b {
            for x3 in -b..=b {
                for x4 in -b..=b {
                    if x1 + x2 + x3 + x4 == 0 {
                        let n = x1.pow(3) + x2.pow(3) + x3.pow(3) + x4.pow(3);
                        *out.entry(n).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    out
}

/// `r6(n)` by five nested loops with `x6` determined.
pub fn r6_nested(bound: CountBound) -> BTreeMap<i64, u64> {
    let b = bound.b();
    let mut out = BTreeMap::new();
    let mut x = [0i64; 5];
    for_each_tuple(&mut x, b, &mut |x| {
        let x6 = -x.iter().sum::<i64>();
        if x6.abs() <= b {
            let n = x.iter().map(|v| v.pow(3)).sum::<i64>() + x6.pow(3);
            *out.entry(n).or_insert(0) += 1;
        }
    });
    out
}

/// `N(B)` by enumerating the eight free coordinates `x1..x5, x7..x9`.
pub fn n_eight_free(bound: CountBound) -> u64 {
    let b = bound.b();
    // cubic sums of the determined 4-tuples, keyed for the inner lookup
    let mut tail: BTreeMap<i64, u64> = BTreeMap::new();
    let mut y = [0i64; 3];
    for_each_tuple(&mut y, b, &mut |y| {
        let x10 = -y.iter().sum::<i64>();
        if x10.abs() <= b {
            let c = y.iter().map(|v| v.pow(3)).sum::<i64>() + x10.pow(3);
            *tail.entry(c).or_insert(0) += 1;
        }
    });
    let tail: Vec<(i64, u64)> = tail.into_iter().collect();
    let mut total = 0u64;
    let mut x = [0i64; 5];
    for_each_tuple(&mut x, b, &mut |x| {
        let x6 = -x.iter().sum::<i64>();
        if x6.abs() > b {
            return;
        }
        let c = x.iter().map(|v| v.pow(3)).sum::<i64>() + x6.pow(3);
        // each (x7, x8, x9) tuple is still visited: the inner loop is over all
        // of them, grouped only by cubic sum
        for &(t, k) in &tail {
            if c + t == 0 {
                total += k;
            }
        }
    });
    total
}

fn for_each_tuple<const K: usize, F: FnMut(&[i64; K])>(x: &mut [i64; K], b: i64, f: &mut F) {
    x.fill(-b);
    loop {
        f(x);
        let mut i = 0;
        loop {
            if i == K {
                return;
            }
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
            i += 1;
        }
    }
}
