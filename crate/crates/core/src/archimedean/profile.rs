use super::v::v1_progression;
use super::QuadConfig;
use crate::numeric::{sinc, CompensatedSum, GaussLegendre};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Step in the cubic frequency `xi`.
///
/// `g6(xi) g4(xi)` is the Fourier transform of the density of `sum x_i^3`
/// over the slice, which is supported in `[-5/4, 5/4]`, so any step below
/// `4/5` makes the plain sum over the lattice exact up to truncation.
pub const XI_STEP: f64 = 0.25;

/// Step in the linear frequencies. `v1^k` is the transform of a measure on
/// `[-k/2, k/2]`; for `k <= 6`, plus a kernel of width below 1, a step of
/// 1/4 is again exact up to truncation.
pub const ZETA_STEP: f64 = 0.25;

#[derive(Debug, Clone)]
struct Row {
    xi: f64,
    z0: f64,
    values: Vec<f64>,
}

impl Row {
    fn compute(xi: f64, inner: f64, gl: &GaussLegendre) -> Self {
        // the stationary band of v1(xi, .) for xi >= 0 is [-3xi/4, 0]
        let z0 = -0.75 * xi - inner;
        let n = ((0.75 * xi + 2.0 * inner) / ZETA_STEP).ceil() as usize + 1;
        Self {
            xi,
            z0,
            values: v1_progression(xi, z0, ZETA_STEP, n, gl),
        }
    }

    /// `int v1(xi, z)^k sinc(lambda z)^2 dz`; `lambda = 0` gives `g_k(xi)`.
    fn moment(&self, k: i32, lambda: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for (j, &v) in self.values.iter().enumerate() {
            let w = if lambda == 0.0 {
                1.0
            } else {
                sinc(lambda * (self.z0 + ZETA_STEP * j as f64)).powi(2)
            };
            acc.add(v.powi(k) * w);
        }
        ZETA_STEP * acc.value()
    }
}

/// `v1(xi, .)` tabulated on the `zeta` lattice for every lattice `xi` in
/// `[0, R]`. Negative `xi` follow from `v1(-xi, -z) = v1(xi, z)`.
#[derive(Debug, Clone)]
pub struct FourierProfile {
    outer_radius: f64,
    inner_radius: f64,
    rows: Vec<Row>,
    g4: Vec<f64>,
    g6: Vec<f64>,
}

/// The sum over `|xi| <= R` plus a fitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedIntegral {
    pub radius: f64,
    pub partial: f64,
    pub tail: f64,
    pub value: f64,
}

impl FourierProfile {
    pub fn compute(outer_radius: f64, inner_radius: f64, panel_nodes: usize) -> Result<Self> {
        if !(outer_radius >= 4.0 * XI_STEP && inner_radius > 0.0) {
            return Err(Error::invalid("profile radii too small"));
        }
        let gl = GaussLegendre::new(panel_nodes);
        let m = (outer_radius / XI_STEP).round() as usize;
        let rows: Vec<Row> = (0..=m)
            .into_par_iter()
            .map(|i| Row::compute(i as f64 * XI_STEP, inner_radius, &gl))
            .collect();
        let g4 = rows.iter().map(|r| r.moment(4, 0.0)).collect();
        let g6 = rows.iter().map(|r| r.moment(6, 0.0)).collect();
        Ok(Self {
            outer_radius: m as f64 * XI_STEP,
            inner_radius,
            rows,
            g4,
            g6,
        })
    }

    pub fn from_config(cfg: &QuadConfig) -> Result<Self> {
        cfg.validate()?;
        Self::compute(cfg.outer_radius, cfg.inner_radius, cfg.panel_nodes)
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// `(xi, g4(xi), g6(xi))` for lattice `xi >= 0`.
    pub fn slices(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.rows
            .iter()
            .zip(self.g4.iter().zip(&self.g6))
            .map(|(r, (&a, &b))| (r.xi, a, b))
    }

    fn index_for(&self, radius: f64) -> usize {
        ((radius / XI_STEP).round() as usize).min(self.rows.len() - 1)
    }

    /// `J` truncated to `|xi| <= radius`, with the tail from
    /// `g4 g6 ~ xi^{-8/3} (a + b ln xi)` fitted on `[radius/2, radius]`.
    pub fn singular_integral(&self, radius: f64) -> TruncatedIntegral {
        let m = self.index_for(radius);
        let f = |i: usize| self.g4[i] * self.g6[i];
        let mut acc = CompensatedSum::new();
        acc.add(f(0));
        for i in 1..=m {
            acc.add(2.0 * f(i));
        }
        let partial = XI_STEP * acc.value();
        let r = m as f64 * XI_STEP;
        let tail = fitted_tail(
            (m / 2..=m)
                .filter(|&i| i > 0)
                .map(|i| (i as f64 * XI_STEP, f(i))),
            r,
        );
        TruncatedIntegral {
            radius: r,
            partial,
            tail,
            value: partial + tail,
        }
    }

    /// `U(eta1, eta2, eta3) = int v1(b1,b2)^6 v1(b1,b3)^4 prod sinc(eta_i b_i)^2`.
    ///
    /// No tail is added. Beyond the outer radius `g4 g6` is already below
    /// the truncation tolerance and the kernel in `b1` is at most
    /// `(pi eta1 R)^-2`, which is kept small by requiring `eta1 R >= 2`.
    pub fn u_eta(&self, eta: [f64; 3]) -> Result<f64> {
        if eta.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return Err(Error::invalid("kernel widths must lie in (0, 1)"));
        }
        if eta[0] * self.outer_radius < 2.0 {
            return Err(Error::invalid(format!(
                "outer radius {} too small for eta = {}",
                self.outer_radius, eta[0]
            )));
        }
        let terms: Vec<f64> = self
            .rows
            .par_iter()
            .map(|r| sinc(eta[0] * r.xi).powi(2) * r.moment(6, eta[1]) * r.moment(4, eta[2]))
            .collect();
        let mut acc = CompensatedSum::new();
        acc.add(terms[0]);
        for t in &terms[1..] {
            acc.add(2.0 * t);
        }
        Ok(XI_STEP * acc.value())
    }
}

/// Least-squares fit of `y xi^{8/3} = a + b ln xi`, integrated over
/// `|xi| > r` on both sides.
fn fitted_tail(points: impl Iterator<Item = (f64, f64)>, r: f64) -> f64 {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (xi, y) in points {
        let t = xi.ln();
        let s = y * xi.powf(8.0 / 3.0);
        n += 1.0;
        sx += t;
        sy += s;
        sxx += t * t;
        sxy += t * s;
    }
    if n < 3.0 || r <= 1.0 {
        return 0.0;
    }
    let det = n * sxx - sx * sx;
    let b = if det.abs() > 1e-300 { (n * sxy - sx * sy) / det } else { 0.0 };
    let a = (sy - b * sx) / n;
    2.0 * 0.6 * r.powf(-5.0 / 3.0) * (a + b * r.ln() + 0.6 * b)
}

/// `g_k(xi)` for `k = 4` or `6` on the Fourier side, from a single row.
pub(crate) fn fourier_moment(xi: f64, k: i32, inner_radius: f64, panel_nodes: usize) -> f64 {
    let gl = GaussLegendre::new(panel_nodes);
    Row::compute(xi.abs(), inner_radius, &gl).moment(k, 0.0)
}
