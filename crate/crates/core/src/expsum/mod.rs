//! Complete cubic exponential sums and the arithmetic densities built from
//! them.
//!
//! `S(q, a, b) = sum_{r mod q} e_q(a r^3 + b r)`. All phases are reduced
//! modulo `q` in integer arithmetic before any trigonometric call, so a sum
//! over `q` terms only ever touches the `q` roots of unity.

mod coefficient;
mod congruence;
mod density;
mod identities;
mod sums;

pub use coefficient::{
    eval_a, eval_a_direct, series_terms, singular_series, CoefficientCache, SeriesCoefficient,
};
pub use congruence::{congruence_reps, count_mp, count_mp_brute, DEFAULT_MP_BUDGET};
pub use density::{chi_p, euler_product, euler_product_to_depth, EulerProduct, LocalDensity};
pub use identities::{fourth_moment_identity, t_sum, t_sum_brute};
pub use sums::{cube_classes, eval_s, hua_ratio, ExpSumTable, RootTable};

/// Largest modulus any routine here will accept.
pub const MAX_MODULUS: u64 = 100_000;

pub(crate) fn check_modulus(q: u64) -> crate::Result<()> {
    if q == 0 {
        return Err(crate::Error::invalid("modulus must be positive"));
    }
    crate::lattice::check_budget("modulus", q as u128, MAX_MODULUS as u128)
}

/// `x^3 mod q` without overflow for `q <= MAX_MODULUS`.
#[inline]
pub(crate) fn cube_mod(x: u64, q: u64) -> u64 {
    let x = x % q;
    x * x % q * x % q
}
