use super::{build_slice_table_with_budget, CountBound, DEFAULT_ENTRY_BUDGET};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// What a [`RepCounts`] table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RepKind {
    /// `v(n)`: 4-tuples with zero linear sum and cubic sum `n`.
    R4,
    /// `r6(n)`: 6-tuples with zero linear sum and cubic sum `n`.
    R6,
    /// 4-tuples modulo `q`, indexed by the residue of the cubic sum.
    R4Mod { q: u64 },
    /// 6-tuples modulo `q`.
    R6Mod { q: u64 },
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense { offset: i64, counts: Vec<u64> },
    Sparse(BTreeMap<i64, u64>),
}

/// Sparse or dense integer-keyed table `n -> count`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepCounts {
    kind: RepKind,
    storage: Storage,
}

impl RepCounts {
    pub(crate) fn dense(kind: RepKind, offset: i64, counts: Vec<u64>) -> Self {
        Self {
            kind,
            storage: Storage::Dense { offset, counts },
        }
    }

    pub(crate) fn sparse(kind: RepKind, map: BTreeMap<i64, u64>) -> Self {
        let map = map.into_iter().filter(|&(_, c)| c != 0).collect();
        Self {
            kind,
            storage: Storage::Sparse(map),
        }
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense { .. })
    }

    pub fn get(&self, n: i64) -> u64 {
        match &self.storage {
            Storage::Dense { offset, counts } => usize::try_from(n - offset)
                .ok()
                .and_then(|i| counts.get(i).copied())
                .unwrap_or(0),
            Storage::Sparse(map) => map.get(&n).copied().unwrap_or(0),
        }
    }

    /// Non-zero entries in ascending order of `n`.
    pub fn iter(&self) -> Box<dyn Iterator<Item = (i64, u64)> + '_> {
        match &self.storage {
            Storage::Dense { offset, counts } => Box::new(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(move |(i, &c)| (offset + i as i64, c)),
            ),
            Storage::Sparse(map) => Box::new(map.iter().map(|(&n, &c)| (n, c))),
        }
    }

    /// Number of keys with a non-zero count.
    pub fn support_len(&self) -> usize {
        self.iter().count()
    }

    pub fn total(&self) -> u128 {
        self.iter().map(|(_, c)| c as u128).sum()
    }

    /// Smallest and largest key with non-zero count.
    pub fn key_range(&self) -> Option<(i64, i64)> {
        let mut it = self.iter();
        let first = it.next()?.0;
        let last = it.last().map_or(first, |e| e.0);
        Some((first, last))
    }

    /// Counts as `f64` on the dense window `lo..=hi`.
    pub fn to_dense_f64(&self, lo: i64, hi: i64) -> Vec<f64> {
        let mut out = vec![0.0; (hi - lo + 1).max(0) as usize];
        for (n, c) in self.iter() {
            if (lo..=hi).contains(&n) {
                out[(n - lo) as usize] = c as f64;
            }
        }
        out
    }

    /// Writes `n,count` lines (with a header) for every non-zero entry.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,count")?;
        for (n, c) in self.iter() {
            writeln!(out, "{n},{c}")?;
        }
        Ok(())
    }

    /// Reads the format produced by [`RepCounts::write_csv`]. The header is
    /// optional; repeated keys are rejected.
    pub fn from_csv(kind: RepKind, text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || (i == 0 && line == "n,count") {
                continue;
            }
            let (n, c) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(i + 1, "expected `n,count`"))?;
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad key {n:?}")))?;
            let c: u64 = c
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad count {c:?}")))?;
            if map.insert(n, c).is_some() {
                return Err(Error::parse(i + 1, format!("duplicate key {n}")));
            }
        }
        Ok(Self::sparse(kind, map))
    }
}

pub fn count_r4(bound: CountBound) -> Result<RepCounts> {
    count_r4_with_budget(bound, DEFAULT_ENTRY_BUDGET)
}

/// `v(n)` for every `n`: triples `(x1, x2, x3)` with `x4 = -(x1+x2+x3)`
/// inside the box.
pub fn count_r4_with_budget(bound: CountBound, budget: u128) -> Result<RepCounts> {
    let b = bound.b();
    let span = 4 * b * b * b;
    let len = (2 * span + 1) as u128;
    let cubic = |x1: i64, x2: i64, x3: i64| {
        let x4 = -(x1 + x2 + x3);
        x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3 + x4 * x4 * x4
    };
    let x3_range = move |x1: i64, x2: i64| {
        let s = x1 + x2;
        (-b).max(-b - s)..=b.min(b - s)
    };

    if len <= budget {
        let counts = (-b..=b)
            .into_par_iter()
            .fold(
                || vec![0u64; len as usize],
                |mut acc, x1| {
                    for x2 in -b..=b {
                        for x3 in x3_range(x1, x2) {
                            acc[(cubic(x1, x2, x3) + span) as usize] += 1;
                        }
                    }
                    acc
                },
            )
            .reduce_with(add_tables)
            .unwrap_or_else(|| vec![0; len as usize]);
        Ok(RepCounts::dense(RepKind::R4, -span, counts))
    } else {
        let mut map = BTreeMap::new();
        for x1 in -b..=b {
            for x2 in -b..=b {
                for x3 in x3_range(x1, x2) {
                    *map.entry(cubic(x1, x2, x3)).or_insert(0u64) += 1;
                }
            }
        }
        Ok(RepCounts::sparse(RepKind::R4, map))
    }
}

fn add_tables(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn count_r6(bound: CountBound) -> Result<RepCounts> {
    count_r6_with_budget(bound, DEFAULT_ENTRY_BUDGET)
}

/// `r6(n) = sum over (sigma, kappa) of h3(sigma, kappa) h3(-sigma, n - kappa)`.
///
/// The contribution of the group pair `(sigma, -sigma)` equals that of
/// `(-sigma, sigma)`, so only `sigma >= 0` is visited.
pub fn count_r6_with_budget(bound: CountBound, budget: u128) -> Result<RepCounts> {
    let table = build_slice_table_with_budget(bound, budget)?;
    let b = bound.b();
    let span = 6 * b * b * b;
    let len = (2 * span + 1) as u128;
    let pair = |sigma: i64| {
        let g = table.group(sigma).expect("sigma in range");
        let h = table.group(-sigma).expect("sigma in range");
        let mult = if sigma == 0 { 1 } else { 2 };
        (g, h, mult)
    };

    if len <= budget {
        let counts = (0..=3 * b)
            .into_par_iter()
            .fold(
                || vec![0u64; len as usize],
                |mut acc, sigma| {
                    let (g, h, mult) = pair(sigma);
                    for &(k1, c1) in &g.entries {
                        let base = k1 + span;
                        let w = c1 * mult;
                        for &(k2, c2) in &h.entries {
                            acc[(base + k2) as usize] += w * c2;
                        }
                    }
                    acc
                },
            )
            .reduce_with(add_tables)
            .unwrap_or_else(|| vec![0; len as usize]);
        Ok(RepCounts::dense(RepKind::R6, -span, counts))
    } else {
        let mut map = BTreeMap::new();
        for sigma in 0..=3 * b {
            let (g, h, mult) = pair(sigma);
            for &(k1, c1) in &g.entries {
                for &(k2, c2) in &h.entries {
                    *map.entry(k1 + k2).or_insert(0u64) += mult * c1 * c2;
                }
            }
        }
        Ok(RepCounts::sparse(RepKind::R6, map))
    }
}

/// `N(B)`, the number of solutions of the full system in `[-B, B]^10`.
pub fn count_n(bound: CountBound) -> Result<u64> {
    let r4 = count_r4(bound)?;
    let r6 = count_r6(bound)?;
    count_n_from(&r6, &r4)
}

/// `sum_n r6(n) v(-n)`; errors if the total leaves `u64`.
pub fn count_n_from(r6: &RepCounts, r4: &RepCounts) -> Result<u64> {
    let mut acc: u128 = 0;
    for (n, v) in r4.iter() {
        let u = r6.get(-n) as u128;
        acc = u
            .checked_mul(v as u128)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("N(B)"))?;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("N(B)"))
}

/// The two families making up `v(0)`: tuples with `x1 + x2 = x3 + x4 = 0`,
/// and tuples with `x1 + x2 != 0` and `{x3, x4} = {-x1, -x2}`.
pub fn v_zero_structure(bound: CountBound) -> (u64, u64) {
    let b = bound.b();
    let w = bound.width();
    let paired = w * w;
    let mut swapped = 0u64;
    for x1 in -b..=b {
        for x2 in -b..=b {
            if x1 + x2 != 0 {
                swapped += if x1 == x2 { 1 } else { 2 };
            }
        }
    }
    (paired, swapped)
}
