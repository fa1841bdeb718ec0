use super::ArcSet;
use crate::lattice::{count_r4, count_r6, CountBound, RepCounts};
use crate::numeric::CompensatedSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

/// `u(n; M)` and `u(n; m)` next to the exact `r6(n)` and `v(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcIntegralReport {
    pub n: i64,
    pub r6: u64,
    pub v_n: u64,
    pub u_major: f64,
    pub u_minor: f64,
}

impl ArcIntegralReport {
    pub fn residual(&self) -> f64 {
        self.u_major + self.u_minor - self.r6 as f64
    }

    /// Tolerance for [`Self::residual`]: `1e-9 r6(n) + 1e-6`.
    pub fn tolerance(&self) -> f64 {
        1e-9 * self.r6 as f64 + 1e-6
    }
}

/// `u(n; M) = sum_m r6(m) int_M e(a(m - n)) da`, summed directly.
///
/// `int_0^1 f(a, b)^6 db = sum_m r6(m) e(a m)`, so each arc contributes a
/// difference of sines per frequency. The minor part uses the minor
/// intervals' own kernel rather than `r6(n) - u(n; M)`.
pub fn u_on_arcs(r6: &RepCounts, r4: Option<&RepCounts>, n: i64, arcs: &ArcSet) -> ArcIntegralReport {
    let (mut maj, mut min) = (CompensatedSum::new(), CompensatedSum::new());
    for (m, c) in r6.iter() {
        let d = m - n;
        maj.add(c as f64 * arcs.major_kernel(d));
        min.add(c as f64 * arcs.minor_kernel(d));
    }
    ArcIntegralReport {
        n,
        r6: r6.get(n),
        v_n: r4.map_or(0, |v| v.get(n)),
        u_major: maj.value(),
        u_minor: min.value(),
    }
}

/// The dissection `N(B) = N(B; M) + N(B; m)` evaluated exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NSplit {
    pub bound: u32,
    pub delta: f64,
    pub arcs_merged: bool,
    pub n_exact: u64,
    pub n_major: f64,
    pub n_minor: f64,
    /// `|N_major + N_minor - N| / N`.
    pub sum_relative_error: f64,
    /// Largest `|u_major + u_minor - r6(n)|` over every `n`.
    pub max_residual: f64,
    /// Whether every residual is within `1e-9 r6(n) + 1e-6`.
    pub residuals_within_tolerance: bool,
    pub u0_major: f64,
    pub u0_minor: f64,
    pub measure: f64,
    /// `N_minor / (45 (2B)^5)`.
    pub ratio_minor_to_45: f64,
    /// `u(0; m) / (15 (2B)^3)`.
    pub ratio_u0_minor_to_15: f64,
    /// `u(0; M) / B^{2 + 3 delta}`.
    pub u0_major_scaled: f64,
    /// `mes(M) / B^{3 delta - 3}`.
    pub measure_scaled: f64,
    /// Largest difference between the convolution and the direct sums at
    /// the spot-checked `n`.
    pub spot_check_max_diff: f64,
    pub fft_size: usize,
    /// Per-`n` values for `|n| <= 4B^3`, the support of `v`.
    #[serde(skip)]
    pub per_n: Vec<ArcIntegralReport>,
}

/// Computes `u(n; M)` and `u(n; m)` for every `n` by one FFT convolution
/// of the dense `r6` array with each arc kernel, then pairs with `v(n)`.
pub fn n_split(bound: CountBound, delta: f64) -> Result<NSplit> {
    let bf = bound.get() as f64;
    let arcs = match super::build_major_arcs(bf, delta) {
        Ok(a) => a,
        Err(Error::ArcOverlap { .. }) => ArcSet::merged(bf, delta)?,
        Err(e) => return Err(e),
    };
    let r6 = count_r6(bound)?;
    let r4 = count_r4(bound)?;
    let n_exact = crate::lattice::count_n_from(&r6, &r4)?;
    let b = bound.get() as i64;
    let span = 6 * b * b * b;
    let len = (2 * span + 1) as usize;
    let dense = r6.to_dense_f64(-span, span);

    let size = (2 * len - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);

    let mut rhat: Vec<Complex64> = dense.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    rhat.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut rhat);

    let convolve = |kernel: &dyn Fn(i64) -> f64| -> Vec<f64> {
        let mut k = vec![Complex64::new(0.0, 0.0); size];
        for d in 0..len {
            let v = kernel(d as i64);
            k[d] = Complex64::new(v, 0.0);
            if d > 0 {
                k[size - d] = Complex64::new(v, 0.0);
            }
        }
        fwd.process(&mut k);
        for (x, r) in k.iter_mut().zip(&rhat) {
            *x *= r;
        }
        inv.process(&mut k);
        let scale = 1.0 / size as f64;
        k[..len].iter().map(|z| z.re * scale).collect()
    };
    let u_major = convolve(&|d| arcs.major_kernel(d));
    let u_minor = convolve(&|d| arcs.minor_kernel(d));

    let mut max_residual = 0.0f64;
    let mut within = true;
    for (j, (&a, &m)) in u_major.iter().zip(&u_minor).enumerate() {
        let r = dense[j];
        let res = (a + m - r).abs();
        max_residual = max_residual.max(res);
        if res > 1e-9 * r + 1e-6 {
            within = false;
        }
    }

    let vspan = 4 * b * b * b;
    let mut per_n = Vec::with_capacity((2 * vspan + 1) as usize);
    let (mut nmaj, mut nmin) = (CompensatedSum::new(), CompensatedSum::new());
    for n in -vspan..=vspan {
        let j = (n + span) as usize;
        let v = r4.get(n);
        nmaj.add(u_major[j] * v as f64);
        nmin.add(u_minor[j] * v as f64);
        per_n.push(ArcIntegralReport {
            n,
            r6: r6.get(n),
            v_n: v,
            u_major: u_major[j],
            u_minor: u_minor[j],
        });
    }
    let (n_major, n_minor) = (nmaj.value(), nmin.value());

    let mut spot = 0.0f64;
    for n in spot_points(vspan) {
        let direct = u_on_arcs(&r6, Some(&r4), n, &arcs);
        let j = (n + span) as usize;
        spot = spot
            .max((direct.u_major - u_major[j]).abs())
            .max((direct.u_minor - u_minor[j]).abs());
    }

    let u0_major = u_major[span as usize];
    let u0_minor = u_minor[span as usize];
    let two_b = 2.0 * bf;
    let measure = arcs.measure();
    Ok(NSplit {
        bound: bound.get(),
        delta,
        arcs_merged: arcs.merged,
        n_exact,
        n_major,
        n_minor,
        sum_relative_error: ((n_major + n_minor) - n_exact as f64).abs() / n_exact as f64,
        max_residual,
        residuals_within_tolerance: within,
        u0_major,
        u0_minor,
        measure,
        ratio_minor_to_45: n_minor / (45.0 * two_b.powi(5)),
        ratio_u0_minor_to_15: u0_minor / (15.0 * two_b.powi(3)),
        u0_major_scaled: u0_major / bf.powf(2.0 + 3.0 * delta),
        measure_scaled: measure / bf.powf(3.0 * delta - 3.0),
        spot_check_max_diff: spot,
        fft_size: size,
        per_n,
    })
}

fn spot_points(vspan: i64) -> Vec<i64> {
    let mut pts = vec![0, 3, -3, vspan / 7 * 3, -(vspan / 2 / 3 * 3), vspan];
    pts.sort_unstable();
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::DEFAULT_DELTA;

    #[test]
    fn unit_box_is_all_major() {
        let s = n_split(CountBound::new(1).unwrap(), DEFAULT_DELTA).unwrap();
        assert!(s.arcs_merged);
        assert_eq!(s.n_exact, 2679);
        assert!((s.n_major - 2679.0).abs() < 1e-6);
        assert!(s.n_minor.abs() < 1e-6);
    }

    #[test]
    fn full_circle_reproduces_r6() {
        let b = CountBound::new(3).unwrap();
        let r6 = count_r6(b).unwrap();
        let arcs = ArcSet::merged(1.0, DEFAULT_DELTA).unwrap();
        for n in [-30i64, 0, 9, 27] {
            let rep = u_on_arcs(&r6, None, n, &arcs);
            assert!((rep.u_major - r6.get(n) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn small_box_split() {
        let s = n_split(CountBound::new(6).unwrap(), DEFAULT_DELTA).unwrap();
        assert!(!s.arcs_merged);
        assert!(s.residuals_within_tolerance, "{}", s.max_residual);
        assert!(s.sum_relative_error < 1e-9);
        assert!(s.spot_check_max_diff < 1e-6);
        let total: f64 = s.per_n.iter().map(|r| r.u_major * r.v_n as f64).sum();
        assert!((total - s.n_major).abs() <= 1e-9 * s.n_exact as f64);
    }
}
