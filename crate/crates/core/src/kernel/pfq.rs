use super::kahan::{CompensatedComplexSum, CompensatedSum};
use super::{ComplexValue, SeriesSum};
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_TERMS: usize = 100_000;

/// Generalized hypergeometric series `pFq(a; b; z)` for `|z| < 1`, summed
/// until two successive terms fall below `tol · |sum|`.
///
/// When every parameter and `z` are real the sum is carried out in real
/// arithmetic and the imaginary part of the result is exactly zero.
pub fn pfq_series(
    numerator: &[ComplexValue],
    denominator: &[ComplexValue],
    z: ComplexValue,
    tol: f64,
) -> Result<SeriesSum> {
    if !(z.norm() < 1.0) {
        return Err(Error::Divergence(format!("pFq series needs |z| < 1, got |z| = {}", z.norm())));
    }
    let all_real = z.im == 0.0 && numerator.iter().chain(denominator).all(|p| p.im == 0.0);
    if all_real {
        let a: Vec<f64> = numerator.iter().map(|p| p.re).collect();
        let b: Vec<f64> = denominator.iter().map(|p| p.re).collect();
        real_series(&a, &b, z.re, tol)
    } else {
        complex_series(numerator, denominator, z, tol)
    }
}

fn denominator_pole(k: usize) -> Error {
    Error::domain(format!("denominator parameter reaches a nonpositive integer at term {k}"))
}

fn real_series(a: &[f64], b: &[f64], z: f64, tol: f64) -> Result<SeriesSum> {
    let mut term = 1.0f64;
    let mut sum = CompensatedSum::new();
    sum.add(term);
    let mut small_in_a_row = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &p in a {
            ratio *= p + kf;
        }
        for &q in b {
            let d = q + kf;
            if d == 0.0 {
                return Err(denominator_pole(k));
            }
            ratio /= d;
        }
        term *= ratio;
        sum.add(term);
        if term.abs() <= tol * sum.value().abs() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(SeriesSum {
                    value: Complex64::new(sum.value(), 0.0),
                    terms_used: k + 2,
                    last_term_magnitude: term.abs(),
                    converged: true,
                });
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(Error::NonConvergence { iterations: MAX_TERMS, last_delta: term.abs() })
}

fn complex_series(a: &[Complex64], b: &[Complex64], z: Complex64, tol: f64) -> Result<SeriesSum> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = CompensatedComplexSum::new();
    sum.add(term);
    let mut small_in_a_row = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &p in a {
            ratio *= p + kf;
        }
        for &q in b {
            let d = q + kf;
            if d == Complex64::new(0.0, 0.0) {
                return Err(denominator_pole(k));
            }
            ratio /= d;
        }
        term *= ratio;
        sum.add(term);
        if term.norm() <= tol * sum.value().norm() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(SeriesSum {
                    value: sum.value(),
                    terms_used: k + 2,
                    last_term_magnitude: term.norm(),
                    converged: true,
                });
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(Error::NonConvergence { iterations: MAX_TERMS, last_delta: term.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gauss_log_identity() {
        // ₂F₁(1, 1; 2; z) = −ln(1 − z)/z
        for z in [0.5, -0.7, 0.9] {
            let s = pfq_series(&[r(1.0), r(1.0)], &[r(2.0)], r(z), 1e-16).unwrap();
            let exact = -(1.0f64 - z).ln() / z;
            assert!((s.value.re - exact).abs() < 2e-15 * exact.abs(), "z = {z}");
            assert_eq!(s.value.im, 0.0);
        }
        let s = pfq_series(&[r(1.0), r(1.0)], &[r(2.0)], r(0.5), 1e-16).unwrap();
        assert!((s.value.re - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn zero_argument_gives_one() {
        let s = pfq_series(&[Complex64::new(0.3, 2.0)], &[r(1.5), r(-0.5)], r(0.0), 1e-15).unwrap();
        assert_eq!(s.value, r(1.0));
    }

    #[test]
    fn confluent_limit_exponential() {
        // ₀F₀(;;z) = e^z
        let z = Complex64::new(0.3, -0.6);
        let s = pfq_series(&[], &[], z, 1e-17).unwrap();
        assert!((s.value - z.exp()).norm() < 1e-15);
    }

    #[test]
    fn terminating_series() {
        // ₂F₁(−2, 1; 1; z) = (1 − z)²
        let s = pfq_series(&[r(-2.0), r(1.0)], &[r(1.0)], r(0.3), 1e-16).unwrap();
        assert!((s.value.re - 0.49).abs() < 1e-15);
    }

    #[test]
    fn rejects_unit_disc_boundary_and_poles() {
        assert!(matches!(pfq_series(&[r(1.0)], &[r(2.0)], r(1.0), 1e-12), Err(Error::Divergence(_))));
        assert!(matches!(pfq_series(&[r(1.0)], &[r(-1.0)], r(0.5), 1e-12), Err(Error::Domain(_))));
    }
}
