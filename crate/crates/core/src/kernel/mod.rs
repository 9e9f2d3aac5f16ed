//! Numerical building blocks shared by every evaluator.

pub mod accel;
pub mod bessel;
pub mod extended;
pub mod gamma;
pub mod kahan;
pub mod pfq;
pub mod quadrature;
pub mod zeta;

use num_complex::Complex64;

pub use accel::{alternating_accelerated_sum, alternating_accelerated_sum_complex};
pub use bessel::{kv_asymptotic, kv_complex, kv_integral, kv_rotated};
pub use gamma::gamma_real;
pub use kahan::{CompensatedComplexSum, CompensatedSum};
pub use pfq::pfq_series;
pub use quadrature::{integrate, integrate_real, QuadratureSpec};
pub use zeta::hurwitz_zeta;

/// Complex scalar used for `a` and all complex intermediates.
pub type ComplexValue = Complex64;

/// Result of a summation or quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: ComplexValue,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    pub converged: bool,
}

/// Principal argument in (−π, π].
pub fn arg(z: ComplexValue) -> f64 {
    let t = z.im.atan2(z.re);
    if t == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t
    }
}

/// Relative distance `|x − y| / |y|`, falling back to the absolute distance
/// when `y` is zero.
pub fn rel_diff(x: ComplexValue, y: ComplexValue) -> f64 {
    let d = (x - y).norm();
    let s = y.norm();
    if s == 0.0 {
        d
    } else {
        d / s
    }
}
