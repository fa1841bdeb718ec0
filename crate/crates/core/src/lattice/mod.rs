//! Exact enumeration of integral solutions in the box `[-B, B]`.
//!
//! Everything here is integer arithmetic. Counts of 6-tuples are assembled
//! from a table of triples keyed by (linear sum, cubic sum) and joined
//! against itself; 4-tuples are enumerated directly with the last
//! coordinate determined.

pub mod brute;
mod divisor;
mod reps;
mod slice;
mod spaces;

pub use divisor::count_v_divisor;
pub use reps::{
    count_n, count_n_from, count_r4, count_r4_with_budget, count_r6, count_r6_with_budget,
    v_zero_structure, RepCounts, RepKind,
};
pub use slice::{build_slice_table, build_slice_table_with_budget, SliceGroup, SliceTable};
pub use spaces::{LinearSpace, LinearSpaceFamily};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default cap on the number of table entries a single enumeration may
/// materialize.
pub const DEFAULT_ENTRY_BUDGET: u128 = 1 << 27;

/// Largest box half-width accepted; keeps every cubic sum well inside `i64`.
pub const MAX_BOUND: u32 = 5_000;

/// Box half-width `B`: coordinates satisfy `|x_i| <= B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CountBound(u32);

impl CountBound {
    pub fn new(b: u32) -> Result<Self> {
        if b > MAX_BOUND {
            return Err(Error::invalid(format!(
                "B = {b} exceeds the supported maximum {MAX_BOUND}"
            )));
        }
        Ok(Self(b))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn b(self) -> i64 {
        self.0 as i64
    }

    /// Number of admissible values of one coordinate, `2B + 1`.
    pub fn width(self) -> u64 {
        2 * self.0 as u64 + 1
    }

    pub fn contains(self, x: i64) -> bool {
        x.abs() <= self.b()
    }
}

impl std::fmt::Display for CountBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Budget {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
