//! Small numerical building blocks shared by the other modules.

mod arith;
mod gauss;
mod qmc;
mod rng;
mod sum;

pub use arith::{divisors, euler_phi, factorize, is_prime, primes_up_to, PrimePower};
pub use gauss::GaussLegendre;
pub use qmc::{radical_inverse, Halton};
pub use rng::batch_rng;
pub use sum::{mean_and_stderr, CompensatedSum};

use std::f64::consts::PI;

/// `e(x) = exp(2 pi i x)` as a (cos, sin) pair, with `x` first reduced mod 1.
#[inline]
pub fn unit_phase(x: f64) -> (f64, f64) {
    let r = x - x.round();
    let (s, c) = (2.0 * PI * r).sin_cos();
    (c, s)
}

/// `sin(pi x) / (pi x)`, equal to 1 at the origin.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - (PI * x).powi(2) / 6.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}
