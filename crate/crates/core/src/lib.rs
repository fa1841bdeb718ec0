//! Exact and numerical verification toolkit for the sliced cubic system
//!
//! ```text
//! x1^3 + ... + x10^3 = 0,   x1 + ... + x6 = 0,   x7 + ... + x10 = 0
//! ```
//!
//! The crate reproduces every computable ingredient of a Hardy-Littlewood
//! treatment of the integral solution count `N(B)` in the box `|x_i| <= B`:
//!
//! * [`lattice`]: exact representation counts and `N(B)` via slice joins,
//!   divisor back-solving, and the 45 special linear spaces.
//! * [`expsum`]: complete cubic exponential sums `S(q,a,b)`, the series
//!   coefficients `A(q)`, truncated singular series, p-adic densities and
//!   congruence counts.
//! * [`archimedean`]: the singular integral `J(1)`, its slice profiles, the
//!   Fejer-type kernel sandwich, and Monte Carlo Siegel volumes.
//! * [`arcs`]: the major/minor arc dissection evaluated exactly as integrals
//!   of trigonometric polynomials.
//! * [`pipeline`]: orchestration into a single machine-readable report.

pub mod archimedean;
pub mod arcs;
pub mod error;
pub mod expsum;
pub mod lattice;
pub mod numeric;
pub mod parse;
pub mod pipeline;

pub use error::{Error, Result};
