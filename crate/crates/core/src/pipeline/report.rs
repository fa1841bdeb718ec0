use super::VerifyConfig;
use crate::archimedean::{DensityEstimate, QuadConfig, SingularIntegral};
use crate::arcs::NSplit;
use serde::Serialize;
use std::io::Write;

/// A number together with its error bar and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub error_bar: f64,
    pub route: &'static str,
}

impl Quantity {
    pub fn new(value: f64, error_bar: f64, route: &'static str) -> Self {
        Self { value, error_bar, route }
    }
}

/// A pass/fail check. Failed hard checks fail the run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub hard: bool,
    pub passed: bool,
    pub detail: String,
}

/// A recorded trend. A missing value always carries its reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub bound: Option<u32>,
    pub value: Option<f64>,
    pub expectation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Diagnostic {
    pub(crate) fn value(name: &str, bound: Option<u32>, value: f64, expectation: &str) -> Self {
        Self {
            name: name.to_string(),
            bound,
            value: Some(value),
            expectation: expectation.to_string(),
            reason: None,
        }
    }

    fn maybe(name: &str, bound: u32, value: Option<f64>, expectation: &str, reason: &Option<String>) -> Self {
        Self {
            name: name.to_string(),
            bound: Some(bound),
            value,
            expectation: expectation.to_string(),
            reason: if value.is_none() {
                Some(reason.clone().unwrap_or_else(|| "not computed".to_string()))
            } else {
                None
            },
        }
    }
}

/// Everything computed for one `B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub bound: u32,
    pub n_exact: Option<u64>,
    pub n_major: Option<Quantity>,
    pub n_minor: Option<Quantity>,
    /// `(45 + C)(2B)^5`.
    pub prediction: Quantity,
    pub ratio_to_prediction: Option<f64>,
    /// `N_minor / (45 (2B)^5)`.
    pub ratio_minor_to_45: Option<f64>,
    /// `u_minor(0) / (15 (2B)^3)`.
    pub ratio_u0_minor_to_15: Option<f64>,
    /// `N_major / (S(B^delta) (2B)^5 J(1))`.
    pub major_over_main: Option<f64>,
    pub arcs_merged: Option<bool>,
    pub union_count: Option<u64>,
    pub weyl_ratio: Option<f64>,
    pub fstar_scaled: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl BoundRow {
    pub(crate) fn new(bound: u32, prediction: f64, prediction_error: f64) -> Self {
        Self {
            bound,
            n_exact: None,
            n_major: None,
            n_minor: None,
            prediction: Quantity::new(prediction, prediction_error, "(45 + C)(2B)^5"),
            ratio_to_prediction: None,
            ratio_minor_to_45: None,
            ratio_u0_minor_to_15: None,
            major_over_main: None,
            arcs_merged: None,
            union_count: None,
            weyl_ratio: None,
            fstar_scaled: None,
            reason: None,
        }
    }

    pub(crate) fn fill_split(&mut self, s: &NSplit) {
        let err = s.sum_relative_error * s.n_exact as f64;
        self.n_exact = Some(s.n_exact);
        self.n_major = Some(Quantity::new(s.n_major, err, "arc-fft"));
        self.n_minor = Some(Quantity::new(s.n_minor, err, "arc-fft"));
        self.ratio_to_prediction = Some(s.n_exact as f64 / self.prediction.value);
        self.ratio_minor_to_45 = Some(s.ratio_minor_to_45);
        self.ratio_u0_minor_to_15 = Some(s.ratio_u0_minor_to_15);
        self.arcs_merged = Some(s.arcs_merged);
    }

    pub(crate) fn diagnostics(&self) -> Vec<Diagnostic> {
        let b = self.bound;
        let sampled = if b < 2 {
            Some("arcs overlap at this B".to_string())
        } else {
            self.reason.clone()
        };
        vec![
            Diagnostic::maybe("N / ((45 + C)(2B)^5)", b, self.ratio_to_prediction, "tends to 1", &self.reason),
            Diagnostic::maybe(
                "N_minor / (45 (2B)^5)",
                b,
                self.ratio_minor_to_45,
                "tends to 1 once B^delta admits q >= 2",
                &self.reason,
            ),
            Diagnostic::maybe(
                "u_minor(0) / (15 (2B)^3)",
                b,
                self.ratio_u0_minor_to_15,
                "tends to 1",
                &self.reason,
            ),
            Diagnostic::maybe(
                "N_major / (S(B^delta) (2B)^5 J(1))",
                b,
                self.major_over_main,
                "tends to 1",
                &self.reason,
            ),
            Diagnostic::maybe(
                "sup_minor |f| / B^(1 - delta/4)",
                b,
                self.weyl_ratio,
                "bounded, sampled",
                &sampled,
            ),
            Diagnostic::maybe(
                "max |f - f*| / q^(2/3)",
                b,
                self.fstar_scaled,
                "bounded, sampled",
                &sampled,
            ),
        ]
    }
}

/// Inputs and settings that determine every number in the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub seed: u64,
    pub primes: u64,
    pub depth: u64,
    pub delta: f64,
    pub bounds: Vec<u32>,
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub radius_doublings: u32,
    pub quad: QuadConfig,
}

impl Provenance {
    pub(crate) fn new(cfg: &VerifyConfig, quad: &QuadConfig, si: &SingularIntegral) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION"),
            seed: cfg.seed,
            primes: cfg.primes,
            depth: cfg.depth,
            delta: cfg.delta,
            bounds: cfg.bounds.clone(),
            outer_radius: si.outer_radius,
            inner_radius: si.inner_radius,
            radius_doublings: si.doublings,
            quad: quad.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub provenance: Provenance,
    pub linear_space_count: usize,
    pub six_variable_space_count: usize,
    pub constant: Quantity,
    pub j1: Quantity,
    pub chi_infinity_siegel: Quantity,
    pub chi_infinity_schmidt: Quantity,
    pub euler_product: Quantity,
    pub densities: Vec<DensityEstimate>,
    pub rows: Vec<BoundRow>,
    pub checks: Vec<Check>,
    pub diagnostics: Vec<Diagnostic>,
}

impl VerificationReport {
    pub fn hard_checks_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.hard).all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per `B`; empty cells are values the report leaves null.
    pub fn write_rows_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        fn cell<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        writeln!(
            out,
            "B,N_exact,N_major,N_minor,prediction,ratio_to_prediction,ratio_minor_to_45,ratio_u0_minor_to_15,major_over_main"
        )?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.bound,
                cell(r.n_exact),
                cell(r.n_major.map(|q| q.value)),
                cell(r.n_minor.map(|q| q.value)),
                r.prediction.value,
                cell(r.ratio_to_prediction),
                cell(r.ratio_minor_to_45),
                cell(r.ratio_u0_minor_to_15),
                cell(r.major_over_main),
            )?;
        }
        Ok(())
    }

    pub fn write_checks_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "name,hard,passed,detail")?;
        for c in &self.checks {
            writeln!(
                out,
                "\"{}\",{},{},\"{}\"",
                c.name.replace('"', "\"\""),
                c.hard,
                c.passed,
                c.detail.replace('"', "\"\"")
            )?;
        }
        Ok(())
    }
}
