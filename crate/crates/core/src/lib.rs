//! Evaluation of the Mathieu-exponential series
//!
//! ```text
//! S±_μ(a; λ) = Σ_{n≥0} (±1)^n e^{−λn} / (n² + a²)^μ
//! ```
//!
//! by direct summation and by its exact and asymptotic representations: an
//! algebraic part (a convergent small-`a` series or a large-`a` expansion in
//! inverse powers of `a`) plus an exponentially small sum of modified Bessel
//! functions of complex argument.
//!
//! The crate is organised bottom-up:
//!
//! - [`kernel`]: complex special functions, double-exponential quadrature,
//!   series engines, compensated summation and arbitrary-precision
//!   evaluation for the exponentially small checks.
//! - [`coefficients`]: exact rational generation of the expansion
//!   coefficients `A_k`, `B_k` and `B̂_k`.
//! - [`evaluators`]: every evaluation route for `S±_μ(a; λ)`.
//! - [`harness`]: reference-table reproduction, consistency checks and
//!   CSV/JSON reports.

pub mod coefficients;
pub mod error;
pub mod evaluators;
pub mod harness;
pub mod kernel;

pub use error::{Error, Result};
pub use evaluators::{Evaluation, Method, SeriesParams, Sign};
pub use kernel::ComplexValue;
