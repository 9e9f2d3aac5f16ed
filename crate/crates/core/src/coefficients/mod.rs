//! Exact generation of the expansion coefficients A_k, B_k and B̂_k.

mod power_series;
mod tables;
mod upoly;

pub use power_series::{
    coth_minus_inverse_series, coth_minus_inverse_series_by_division, sin_over_sinh_series,
    sin_over_sinh_series_by_division, Coefficient, PowerSeries, RationalPoly,
};
pub use tables::{
    a_coefficients, b_coefficients, bhat_coefficients, bhat_route, BhatRoute, CoefficientKind, CoefficientTable,
    BHAT_SMALL_LAMBDA, MAX_A_INDEX, MAX_B_INDEX,
};
pub use upoly::{
    coth_derivative_poly, derivative_polys_through, tanh_derivative_poly, DerivativeCache, UPolynomial, VariableKind,
    MAX_DERIVATIVE_ORDER,
};
