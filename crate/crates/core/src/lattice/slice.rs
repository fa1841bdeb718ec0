use super::{check_budget, CountBound, DEFAULT_ENTRY_BUDGET};
use crate::Result;
use rayon::prelude::*;

const KAPPA_BITS: u32 = 40;
const KAPPA_MASK: u64 = (1 << KAPPA_BITS) - 1;

/// Triples sharing one linear sum `sigma`, as `(kappa, count)` sorted by
/// the cubic sum `kappa`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceGroup {
    pub sigma: i64,
    pub entries: Vec<(i64, u64)>,
}

/// Counts of triples `(x1, x2, x3)` in `[-B, B]^3` by linear and cubic sum.
#[derive(Debug, Clone)]
pub struct SliceTable {
    bound: CountBound,
    // indexed by sigma + 3B; every sigma in [-3B, 3B] has a (possibly empty) group
    groups: Vec<SliceGroup>,
}

impl SliceTable {
    pub fn bound(&self) -> CountBound {
        self.bound
    }

    pub fn arity(&self) -> usize {
        3
    }

    pub fn groups(&self) -> &[SliceGroup] {
        &self.groups
    }

    pub fn group(&self, sigma: i64) -> Option<&SliceGroup> {
        let idx = sigma + 3 * self.bound.b();
        usize::try_from(idx).ok().and_then(|i| self.groups.get(i))
    }

    pub fn get(&self, sigma: i64, kappa: i64) -> u64 {
        self.group(sigma)
            .and_then(|g| {
                g.entries
                    .binary_search_by_key(&kappa, |e| e.0)
                    .ok()
                    .map(|i| g.entries[i].1)
            })
            .unwrap_or(0)
    }

    /// All non-zero entries as `(sigma, kappa, count)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.groups
            .iter()
            .flat_map(|g| g.entries.iter().map(move |&(k, c)| (g.sigma, k, c)))
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|g| g.entries.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_mass(&self) -> u64 {
        self.iter().map(|e| e.2).sum()
    }
}

pub fn build_slice_table(bound: CountBound) -> Result<SliceTable> {
    build_slice_table_with_budget(bound, DEFAULT_ENTRY_BUDGET)
}

/// Enumerates all `(2B+1)^3` triples, packs each `(sigma + 3B, kappa + 3B^3)`
/// into one `u64`, sorts and run-length encodes.
pub fn build_slice_table_with_budget(bound: CountBound, budget: u128) -> Result<SliceTable> {
    let w = bound.width() as u128;
    check_budget("slice table", w * w * w, budget)?;
    let b = bound.b();
    let b3 = b * b * b;
    debug_assert!((6 * b3 as u64) < KAPPA_MASK);

    let mut keys: Vec<u64> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|x1| {
            let c1 = x1 * x1 * x1;
            (-b..=b).flat_map(move |x2| {
                let c12 = c1 + x2 * x2 * x2;
                (-b..=b).map(move |x3| {
                    let sigma = x1 + x2 + x3;
                    let kappa = c12 + x3 * x3 * x3;
                    (((sigma + 3 * b) as u64) << KAPPA_BITS) | (kappa + 3 * b3) as u64
                })
            })
        })
        .collect();
    keys.par_sort_unstable();

    let mut groups: Vec<SliceGroup> = (-3 * b..=3 * b)
        .map(|sigma| SliceGroup {
            sigma,
            entries: Vec::new(),
        })
        .collect();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i];
        let mut j = i + 1;
        while j < keys.len() && keys[j] == key {
            j += 1;
        }
        let s_idx = (key >> KAPPA_BITS) as usize;
        let kappa = (key & KAPPA_MASK) as i64 - 3 * b3;
        groups[s_idx].entries.push((kappa, (j - i) as u64));
        i = j;
    }
    Ok(SliceTable { bound, groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn zero_box_is_single_entry() {
        let t = build_slice_table(CountBound::new(0).unwrap()).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 0, 1)]);
    }

    #[test]
    fn unit_box() {
        let t = build_slice_table(CountBound::new(1).unwrap()).unwrap();
        assert_eq!(t.total_mass(), 27);
        assert_eq!(t.get(3, 3), 1);
        assert_eq!(t.get(-3, -3), 1);
        // on {-1,0,1} the cube map is the identity
        assert!(t.iter().all(|(s, k, _)| s == k));
    }

    #[test]
    fn matches_nested_loops_at_b2() {
        let bound = CountBound::new(2).unwrap();
        let t = build_slice_table(bound).unwrap();
        let mut oracle: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for x1 in -2i64..=2 {
            for x2 in -2i64..=2 {
                for x3 in -2i64..=2 {
                    *oracle
                        .entry((x1 + x2 + x3, x1.pow(3) + x2.pow(3) + x3.pow(3)))
                        .or_default() += 1;
                }
            }
        }
        let got: BTreeMap<(i64, i64), u64> = t.iter().map(|(s, k, c)| ((s, k), c)).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_slice_table_with_budget(CountBound::new(10).unwrap(), 100).unwrap_err();
        assert!(matches!(err, crate::Error::Budget { .. }));
    }

    #[test]
    fn symmetric_and_bounded() {
        let bound = CountBound::new(6).unwrap();
        let t = build_slice_table(bound).unwrap();
        assert_eq!(t.total_mass(), 13u64.pow(3));
        for (s, k, c) in t.iter() {
            assert_eq!(t.get(-s, -k), c);
            assert!(s.abs() <= 18 && k.abs() <= 3 * 216);
        }
    }
}
