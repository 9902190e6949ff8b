//! Exact and Monte Carlo laboratory for common roots of random ±1 polynomials.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`] and [`rng`]: Bernoulli (±1 coefficient) polynomials, their
//!   reproducible sampling and floating-point evaluation.
//! - [`algebra`]: exact integer polynomial arithmetic. Modular GCD, CRT
//!   resultants, bivariate elimination and the common-root decision kernels.
//! - [`atom`]: exact Littlewood–Offord atom probabilities and the classical
//!   concentration bounds.
//! - [`dunomial`]: two-term monomial relations `x^α ± x^β = 0`, their orders,
//!   enumeration and counting at a point.
//! - [`classify`]: annulus filtering, low-degree algebraic candidates, the
//!   exact ±1 decomposition terms and the zone classification of points.
//! - [`experiment`]: Monte Carlo campaigns, exhaustive ground truth, tables
//!   and bound suites behind the `crl` command line tool.

pub mod algebra;
pub mod atom;
pub mod classify;
pub mod dunomial;
pub mod error;
pub mod experiment;
pub mod gaussian;
pub mod numeric;
pub mod poly;
pub mod rng;

pub use error::{Error, Result};
