use super::{check_budget, CountBound};
use crate::Result;

/// Default cap on `45 (2B+1)^5`, the number of points visited by
/// [`LinearSpaceFamily::union_count`].
pub const DEFAULT_UNION_BUDGET: u128 = 200_000_000;

/// One of the five-dimensional linear spaces cut out by
/// `x_i + x_j = 0` over a perfect pairing of `{1..6}` and of `{7..10}`.
///
/// Indices are zero based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearSpace {
    pub pairs: [(usize, usize); 5],
}

impl LinearSpace {
    pub fn contains(&self, x: &[i64; 10]) -> bool {
        self.pairs.iter().all(|&(i, j)| x[i] + x[j] == 0)
    }

    /// Writes the point with free coordinates `free` (one per pair, taken by
    /// the first index of the pair).
    fn point(&self, free: &[i64; 5], out: &mut [i64; 10]) {
        for (&(i, j), &t) in self.pairs.iter().zip(free) {
            out[i] = t;
            out[j] = -t;
        }
    }
}

/// The 45 special linear spaces: 15 pairings of six indices times 3
/// pairings of four.
#[derive(Debug, Clone)]
pub struct LinearSpaceFamily {
    members: Vec<LinearSpace>,
}

impl Default for LinearSpaceFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl LinearSpaceFamily {
    pub fn new() -> Self {
        let six = perfect_matchings(&[0, 1, 2, 3, 4, 5]);
        let four = perfect_matchings(&[6, 7, 8, 9]);
        let mut members = Vec::with_capacity(six.len() * four.len());
        for a in &six {
            for b in &four {
                members.push(LinearSpace {
                    pairs: [a[0], a[1], a[2], b[0], b[1]],
                });
            }
        }
        Self { members }
    }

    /// Number of pairings of the first six indices alone.
    pub fn six_variable_count() -> usize {
        perfect_matchings(&[0, 1, 2, 3, 4, 5]).len()
    }

    pub fn members(&self) -> &[LinearSpace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Points of `[-B, B]^10` on each member; every member has five free
    /// coordinates, so this is `(2B+1)^5` for all 45.
    pub fn per_space_counts(&self, bound: CountBound) -> Vec<u128> {
        let w = bound.width() as u128;
        vec![w.pow(5); self.members.len()]
    }

    pub fn union_count(&self, bound: CountBound) -> Result<u64> {
        self.union_count_with_budget(bound, DEFAULT_UNION_BUDGET)
    }

    /// Cardinality of the union of all members inside the box.
    ///
    /// Each point is attributed to the first member (in family order) that
    /// contains it, so nothing is stored.
    pub fn union_count_with_budget(&self, bound: CountBound, budget: u128) -> Result<u64> {
        let w = bound.width() as u128;
        check_budget(
            "linear-space union",
            w.pow(5) * self.members.len() as u128,
            budget,
        )?;
        let b = bound.b();
        let mut total = 0u64;
        let mut x = [0i64; 10];
        for (k, space) in self.members.iter().enumerate() {
            let earlier = &self.members[..k];
            let mut free = [-b; 5];
            loop {
                space.point(&free, &mut x);
                if !earlier.iter().any(|s| s.contains(&x)) {
                    total += 1;
                }
                if !advance(&mut free, b) {
                    break;
                }
            }
        }
        Ok(total)
    }
}

fn advance(free: &mut [i64; 5], b: i64) -> bool {
    for t in free.iter_mut() {
        if *t < b {
            *t += 1;
            return true;
        }
        *t = -b;
    }
    false
}

fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .copied()
            .filter(|&i| i != items[k])
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_variety(x: &[i64; 10]) -> bool {
        x.iter().map(|v| v * v * v).sum::<i64>() == 0
            && x[..6].iter().sum::<i64>() == 0
            && x[6..].iter().sum::<i64>() == 0
    }

    #[test]
    fn family_sizes() {
        let fam = LinearSpaceFamily::new();
        assert_eq!(fam.len(), 45);
        assert_eq!(LinearSpaceFamily::six_variable_count(), 15);
        let distinct: std::collections::HashSet<_> = fam.members().iter().collect();
        assert_eq!(distinct.len(), 45);
    }

    #[test]
    fn members_lie_on_the_variety() {
        let fam = LinearSpaceFamily::new();
        let bound = CountBound::new(2).unwrap();
        let mut x = [0i64; 10];
        for s in fam.members() {
            let mut free = [-2i64; 5];
            let mut n = 0u128;
            loop {
                s.point(&free, &mut x);
                assert!(on_variety(&x) && s.contains(&x));
                n += 1;
                if !advance(&mut free, 2) {
                    break;
                }
            }
            assert_eq!(n, fam.per_space_counts(bound)[0]);
        }
    }

    #[test]
    fn union_bounds() {
        let fam = LinearSpaceFamily::new();
        for b in 0..=3 {
            let bound = CountBound::new(b).unwrap();
            let u = fam.union_count(bound).unwrap() as u128;
            let per = bound.width() as u128;
            assert!(u >= per.pow(5) && u <= 45 * per.pow(5));
        }
    }

    #[test]
    fn union_at_unit_box_is_every_solution() {
        let fam = LinearSpaceFamily::new();
        let b = CountBound::new(1).unwrap();
        assert_eq!(fam.union_count(b).unwrap(), crate::lattice::count_n(b).unwrap());
    }

    #[test]
    fn union_budget() {
        let fam = LinearSpaceFamily::new();
        assert!(fam
            .union_count_with_budget(CountBound::new(3).unwrap(), 1000)
            .is_err());
    }
}
