//! The major/minor arc dissection in the cubic frequency.
//!
//! A major arc is `{alpha : |alpha - a/q| <= B^{delta-3}}` for
//! `q <= B^delta`. Interval endpoints are stored as a fraction plus a real
//! offset so that `e(d * endpoint)` can be reduced modulo 1 exactly in the
//! fractional part, which keeps the arc integrals of high-frequency
//! trigonometric polynomials accurate.

mod gen;
mod split;

pub use gen::{eval_f, eval_fstar, fstar_deviation, fstar_sweep, weyl_sup_sample, FStarSample, WeylSample};
pub use split::{n_split, u_on_arcs, ArcIntegralReport, NSplit};

use crate::{Error, Result};
use num_integer::Integer;
use serde::Serialize;
use std::f64::consts::PI;

/// `num/den + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Endpoint {
    pub num: i64,
    pub den: i64,
    pub offset: f64,
}

impl Endpoint {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64 + self.offset
    }

    /// `sin(2 pi d x)` with the rational part of `d x` reduced exactly.
    fn sin_times(&self, d: i64) -> f64 {
        let frac = (d as i128 * self.num as i128).rem_euclid(self.den as i128) as f64 / self.den as f64;
        let t = frac + d as f64 * self.offset;
        (2.0 * PI * (t - t.round())).sin()
    }
}

/// A closed-open interval `[lo, hi)` of the unit circle with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn length(&self) -> f64 {
        // subtract fractions exactly before adding the offsets
        let n = self.hi.num as i128 * self.lo.den as i128 - self.lo.num as i128 * self.hi.den as i128;
        n as f64 / (self.hi.den as f64 * self.lo.den as f64) + (self.hi.offset - self.lo.offset)
    }

    /// `int_lo^hi cos(2 pi d a) da`; the matching sine integral is not
    /// needed since every region used here is symmetric under `a -> 1 - a`.
    pub fn cos_integral(&self, d: i64) -> f64 {
        if d == 0 {
            self.length()
        } else {
            (self.hi.sin_times(d) - self.lo.sin_times(d)) / (2.0 * PI * d as f64)
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo.value() <= x && x < self.hi.value()
    }
}

/// One arc `M(q, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorArc {
    pub q: u64,
    pub a: u64,
    pub half_width: f64,
}

impl MajorArc {
    pub fn center(&self) -> f64 {
        self.a as f64 / self.q as f64
    }

    fn interval(&self) -> Interval {
        let (q, a) = (self.q as i64, self.a as i64);
        let lo = if a == 0 {
            Endpoint { num: 0, den: 1, offset: 0.0 }
        } else {
            Endpoint { num: a, den: q, offset: -self.half_width }
        };
        let hi = if a == q {
            Endpoint { num: 1, den: 1, offset: 0.0 }
        } else {
            Endpoint { num: a, den: q, offset: self.half_width }
        };
        Interval { lo, hi }
    }
}

/// The set of major arcs for given `B` and `delta`, with its interval
/// decomposition of `[0, 1)` and the complementary minor intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcSet {
    pub bound: f64,
    pub delta: f64,
    pub arcs: Vec<MajorArc>,
    /// Sorted, pairwise disjoint.
    pub major: Vec<Interval>,
    /// The gaps between consecutive major intervals.
    pub minor: Vec<Interval>,
    /// True when overlapping arcs were merged instead of rejected.
    pub merged: bool,
}

pub const DEFAULT_DELTA: f64 = 1.0 / 9.0;

/// Builds the arcs and checks that they are pairwise disjoint.
pub fn build_major_arcs(bound: f64, delta: f64) -> Result<ArcSet> {
    build(bound, delta, false)
}

impl ArcSet {
    /// Like [`build_major_arcs`] but overlapping arcs are merged into
    /// their union (clipped to `[0, 1)`), for `B` too small to separate
    /// them.
    pub fn merged(bound: f64, delta: f64) -> Result<ArcSet> {
        build(bound, delta, true)
    }

    pub fn measure(&self) -> f64 {
        self.major.iter().map(Interval::length).sum()
    }

    /// Largest admissible denominator, `floor(B^delta)`.
    pub fn q_max(&self) -> u64 {
        q_cutoff(self.bound, self.delta)
    }

    pub fn arc_containing(&self, alpha: f64) -> Option<&MajorArc> {
        let x = alpha.rem_euclid(1.0);
        self.arcs.iter().find(|arc| {
            let c = arc.center();
            (x - c).abs() <= arc.half_width
        })
    }

    pub fn is_major(&self, alpha: f64) -> bool {
        let x = alpha.rem_euclid(1.0);
        self.major.iter().any(|i| i.contains(x))
    }

    /// `int_M cos(2 pi d a) da`.
    pub fn major_kernel(&self, d: i64) -> f64 {
        self.major.iter().map(|i| i.cos_integral(d)).sum()
    }

    /// `int_m cos(2 pi d a) da`, from the minor intervals themselves.
    pub fn minor_kernel(&self, d: i64) -> f64 {
        self.minor.iter().map(|i| i.cos_integral(d)).sum()
    }
}

fn q_cutoff(bound: f64, delta: f64) -> u64 {
    // guard against B^delta landing a hair below an integer
    let x = bound.powf(delta);
    let r = x.round();
    if (x - r).abs() < 1e-12 * r.max(1.0) {
        r as u64
    } else {
        x.floor() as u64
    }
}

fn build(bound: f64, delta: f64, merge: bool) -> Result<ArcSet> {
    if !(bound.is_finite() && bound >= 1.0) {
        return Err(Error::invalid(format!("B = {bound} must be at least 1")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!("delta = {delta} outside (0, 1)")));
    }
    let hw = bound.powf(delta - 3.0);
    let qmax = q_cutoff(bound, delta);
    let mut arcs = Vec::new();
    for q in 1..=qmax {
        for a in 0..=q {
            if a.gcd(&q) == 1 {
                arcs.push(MajorArc { q, a, half_width: hw });
            }
        }
    }
    let mut intervals: Vec<(Interval, usize)> = arcs.iter().enumerate().map(|(i, a)| (a.interval(), i)).collect();
    intervals.sort_by(|x, y| x.0.lo.value().total_cmp(&y.0.lo.value()));

    let mut major: Vec<Interval> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (iv, idx) in intervals {
        if let Some(last) = major.last_mut() {
            if iv.lo.value() < last.hi.value() {
                if !merge {
                    let name = |i: usize| format!("{}/{}", arcs[i].a, arcs[i].q);
                    return Err(Error::ArcOverlap {
                        first: name(*owner.last().unwrap()),
                        second: name(idx),
                    });
                }
                if iv.hi.value() > last.hi.value() {
                    last.hi = iv.hi;
                }
                continue;
            }
        }
        major.push(iv);
        owner.push(idx);
    }
    for iv in &mut major {
        if iv.lo.value() < 0.0 {
            iv.lo = Endpoint { num: 0, den: 1, offset: 0.0 };
        }
        if iv.hi.value() > 1.0 {
            iv.hi = Endpoint { num: 1, den: 1, offset: 0.0 };
        }
    }

    let mut minor = Vec::new();
    let mut cursor = Endpoint { num: 0, den: 1, offset: 0.0 };
    for iv in &major {
        if iv.lo.value() > cursor.value() {
            minor.push(Interval { lo: cursor, hi: iv.lo });
        }
        cursor = iv.hi;
    }
    if cursor.value() < 1.0 {
        minor.push(Interval {
            lo: cursor,
            hi: Endpoint { num: 1, den: 1, offset: 0.0 },
        });
    }
    Ok(ArcSet {
        bound,
        delta,
        arcs,
        major,
        minor,
        merged: merge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_q_one_at_hundred() {
        let s = build_major_arcs(100.0, DEFAULT_DELTA).unwrap();
        assert_eq!(s.q_max(), 1);
        assert_eq!(s.arcs.len(), 2);
        let hw = 100f64.powf(DEFAULT_DELTA - 3.0);
        assert_eq!(s.major.len(), 2);
        assert!((s.major[0].length() - hw).abs() < 1e-18);
        assert!((s.major[1].lo.value() - (1.0 - hw)).abs() < 1e-15);
        assert!((s.measure() - 2.0 * hw).abs() < 1e-18);
        assert_eq!(s.minor.len(), 1);
    }

    #[test]
    fn several_denominators() {
        // 600^(1/9) > 2, so the arc around 1/2 appears
        let s = build_major_arcs(600.0, DEFAULT_DELTA).unwrap();
        assert_eq!(s.q_max(), 2);
        assert_eq!(s.major.len(), 3);
        assert_eq!(s.minor.len(), 2);
        assert!(s.arc_containing(0.5).unwrap().q == 2);
        let hw = s.arcs[0].half_width;
        assert!(s.is_major(1.0 - hw / 2.0) && !s.is_major(0.25));
        let total = s.measure() + s.minor.iter().map(Interval::length).sum::<f64>();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overlap_rejected_then_merged() {
        assert!(matches!(build_major_arcs(1.0, DEFAULT_DELTA), Err(Error::ArcOverlap { .. })));
        let s = ArcSet::merged(1.0, DEFAULT_DELTA).unwrap();
        assert!((s.measure() - 1.0).abs() < 1e-15);
        assert!(s.minor.is_empty());
    }

    #[test]
    fn kernels_complement() {
        let s = build_major_arcs(50.0, DEFAULT_DELTA).unwrap();
        assert!((s.major_kernel(0) + s.minor_kernel(0) - 1.0).abs() < 1e-15);
        for d in [1i64, 7, 1000, 749_999, -123_456] {
            assert!((s.major_kernel(d) + s.minor_kernel(d)).abs() < 1e-13, "d={d}");
        }
    }

    #[test]
    fn symbolic_sine_against_direct() {
        let e = Endpoint { num: 1, den: 3, offset: 1e-4 };
        for d in [1i64, 5, 99] {
            let direct = (2.0 * PI * d as f64 * e.value()).sin();
            assert!((e.sin_times(d) - direct).abs() < 1e-12);
        }
    }
}
