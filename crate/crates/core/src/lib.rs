//! Nabla discrete fractional calculus on integer grids.
//!
//! The crate covers classical nabla fractional sums, discrete Mittag-Leffler
//! functions, Atangana–Baleanu (AB) fractional differences and sums, the
//! two-parameter iterated AB difference-sum operators, the nabla discrete
//! Laplace transform and a power-series solver for difference equations
//! driven by the iterated operators.
//!
//! Operators that only need field arithmetic are generic over [`Scalar`] and
//! run unchanged on `f64`, `f32` and exact rationals ([`ExactScalar`]);
//! anything involving `Γ`, real powers or adaptive truncation is bounded by
//! [`Real`].

pub mod ab;
pub mod error;
pub mod iterated;
pub mod laplace;
pub mod mittag_leffler;
pub mod nabla;
pub mod scalar;
pub mod signal;
pub mod solver;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};
pub use signal::Signal;

/// Arbitrary-precision rational used by the exact paths.
pub type ExactScalar = num_rational::BigRational;

pub type Signal64 = Signal<f64>;
pub type Signal32 = Signal<f32>;
pub type ExactSignal = Signal<ExactScalar>;






pub type AbConfig64 = ab::AbConfig<f64>;
pub type ExactAbConfig = ab::AbConfig<ExactScalar>;
pub type IterOrder64 = iterated::IterOrder<f64>;
pub type ExactIterOrder = iterated::IterOrder<ExactScalar>;
pub type MlParams64 = mittag_leffler::MlParams<f64>;
