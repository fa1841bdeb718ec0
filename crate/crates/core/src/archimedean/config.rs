use crate::parse::{parse_rational, parse_real_list};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// Truncation radii, quadrature orders and Monte Carlo settings for the
/// archimedean computations.
///
/// The text form is one `key = value` per line; `#` starts a comment and
/// keys that are absent keep their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// `R_xi`: the cubic frequency is integrated over `|xi| <= R_xi`.
    pub outer_radius: f64,
    /// `R_eta`: margin kept around the stationary band of the linear
    /// frequencies.
    pub inner_radius: f64,
    /// Gauss nodes per panel; panels are sized to a quarter period.
    pub panel_nodes: usize,
    /// Monte Carlo samples per thickness in the Siegel-volume estimate.
    pub mc_samples: u64,
    pub mc_seed: u64,
    /// Thicknesses used for the Siegel extrapolation, strictly decreasing.
    pub eta_sequence: Vec<f64>,
    /// Accepted relative change when the outer radius is doubled.
    pub tolerance: f64,
    /// How many times the outer radius may be doubled before giving up.
    pub max_doublings: u32,
    /// Low-discrepancy points per shift for the 5-dimensional slice route.
    pub qmc_points: u64,
    pub qmc_shifts: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            outer_radius: 200.0,
            inner_radius: 50.0,
            panel_nodes: 8,
            mc_samples: 20_000_000,
            mc_seed: 42,
            eta_sequence: vec![0.008, 0.004, 0.002],
            tolerance: 1e-3,
            max_doublings: 2,
            qmc_points: 1 << 16,
            qmc_shifts: 16,
        }
    }
}

const KEYS: [&str; 10] = [
    "outer_radius",
    "inner_radius",
    "panel_nodes",
    "mc_samples",
    "mc_seed",
    "eta_sequence",
    "tolerance",
    "max_doublings",
    "qmc_points",
    "qmc_shifts",
];

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::invalid(m.to_string()));
        if !(self.outer_radius.is_finite() && self.outer_radius > 0.0) {
            return bad("outer_radius must be positive");
        }
        if !(self.inner_radius.is_finite() && self.inner_radius > 0.0) {
            return bad("inner_radius must be positive");
        }
        if self.panel_nodes < 4 {
            return bad("panel_nodes must be at least 4");
        }
        if self.eta_sequence.is_empty() {
            return bad("eta_sequence must not be empty");
        }
        if self.eta_sequence.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return bad("eta_sequence must lie in (0, 1)");
        }
        if self.eta_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return bad("eta_sequence must be strictly decreasing");
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return bad("tolerance must lie in (0, 1)");
        }
        if self.mc_samples == 0 || self.qmc_points == 0 || self.qmc_shifts < 2 {
            return bad("sample counts must be positive (and at least two shifts)");
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(Error::parse(line_no, format!("unknown key `{key}`")));
            }
            if !seen.insert(key.to_string()) {
                return Err(Error::parse(line_no, format!("duplicate key `{key}`")));
            }
            let wrap = |e: Error| Error::parse(line_no, format!("{key}: {e}"));
            match key {
                "outer_radius" => cfg.outer_radius = parse_rational(value).map_err(wrap)?,
                "inner_radius" => cfg.inner_radius = parse_rational(value).map_err(wrap)?,
                "tolerance" => cfg.tolerance = parse_rational(value).map_err(wrap)?,
                "eta_sequence" => cfg.eta_sequence = parse_real_list(value).map_err(wrap)?,
                "panel_nodes" => cfg.panel_nodes = int(value, line_no, key)?,
                "mc_samples" => cfg.mc_samples = int(value, line_no, key)?,
                "mc_seed" => cfg.mc_seed = int(value, line_no, key)?,
                "max_doublings" => cfg.max_doublings = int(value, line_no, key)?,
                "qmc_points" => cfg.qmc_points = int(value, line_no, key)?,
                "qmc_shifts" => cfg.qmc_shifts = int(value, line_no, key)?,
                _ => unreachable!(),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn int<T: FromStr>(value: &str, line: usize, key: &str) -> Result<T> {
    value
        .replace('_', "")
        .parse()
        .map_err(|_| Error::parse(line, format!("{key}: `{value}` is not a non-negative integer")))
}

impl FromStr for QuadConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for QuadConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outer_radius = {}", self.outer_radius)?;
        writeln!(f, "inner_radius = {}", self.inner_radius)?;
        writeln!(f, "panel_nodes = {}", self.panel_nodes)?;
        writeln!(f, "mc_samples = {}", self.mc_samples)?;
        writeln!(f, "mc_seed = {}", self.mc_seed)?;
        let etas: Vec<String> = self.eta_sequence.iter().map(|e| e.to_string()).collect();
        writeln!(f, "eta_sequence = {}", etas.join(", "))?;
        writeln!(f, "tolerance = {}", self.tolerance)?;
        writeln!(f, "max_doublings = {}", self.max_doublings)?;
        writeln!(f, "qmc_points = {}", self.qmc_points)?;
        writeln!(f, "qmc_shifts = {}", self.qmc_shifts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = QuadConfig {
            outer_radius: 75.5,
            eta_sequence: vec![0.3, 0.1],
            ..QuadConfig::default()
        };
        assert_eq!(QuadConfig::parse(&cfg.to_string()).unwrap(), cfg);
    }

    #[test]
    fn comments_and_defaults() {
        let cfg = QuadConfig::parse("# radii\n outer_radius = 1/2 # half\n\nmc_seed=7\n").unwrap();
        assert_eq!(cfg.outer_radius, 0.5);
        assert_eq!(cfg.mc_seed, 7);
        assert_eq!(cfg.inner_radius, QuadConfig::default().inner_radius);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "outer_radius",
            "bogus = 1",
            "mc_seed = 1\nmc_seed = 2",
            "panel_nodes = 3",
            "eta_sequence = 0.1, 0.2",
            "eta_sequence = 1.5",
            "outer_radius = -4",
            "mc_samples = many",
        ] {
            assert!(QuadConfig::parse(text).is_err(), "{text}");
        }
    }
}
