use crate::error::{Error, Result};
use crate::kernel::ComplexValue;
use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Principal power a^e.
pub(crate) fn cpow(a: ComplexValue, e: f64) -> ComplexValue {
    if e == 0.0 {
        return real(1.0);
    }
    if a.im == 0.0 && a.re > 0.0 {
        return real(a.re.powf(e));
    }
    a.powf(e)
}

/// 1/(2a^{2μ}).
pub(crate) fn leading_term(mu: f64, a: ComplexValue) -> ComplexValue {
    0.5 * cpow(a, -2.0 * mu)
}

/// sin z / sinh w, written to avoid overflow for large Re w and to take
/// the z/w limit near the origin.
pub(crate) fn sin_over_sinh(z: ComplexValue, w: ComplexValue, ratio_at_zero: f64) -> ComplexValue {
    if w.norm() < 1e-7 {
        // sin z/sinh w ≈ (z/w)(1 − (z² + w²)/6)
        return real(ratio_at_zero) * (1.0 - (z * z + w * w) / 6.0);
    }
    if w.re > 20.0 {
        // 2 sin z e^{−w}/(1 − e^{−2w}) with sin z e^{−w} from exponentials
        let iz = Complex64::new(-z.im, z.re);
        let num = ((iz - w).exp() - (-iz - w).exp()) / Complex64::new(0.0, 1.0);
        return num / (1.0 - (-2.0 * w).exp());
    }
    z.sin() / w.sinh()
}

/// e^{−w} sin z / sinh w.
pub(crate) fn damped_sin_over_sinh(z: ComplexValue, w: ComplexValue, ratio_at_zero: f64) -> ComplexValue {
    if w.re > 20.0 {
        let iz = Complex64::new(-z.im, z.re);
        let num = ((iz - 2.0 * w).exp() - (-iz - 2.0 * w).exp()) / Complex64::new(0.0, 1.0);
        return num / (1.0 - (-2.0 * w).exp());
    }
    sin_over_sinh(z, w, ratio_at_zero) * (-w).exp()
}

/// Tail and quadrature-form representations need 0 < μ < 1.
pub(crate) fn require_fractional_mu(mu: f64, what: &str) -> Result<()> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::precondition(format!(
            "{what} needs 0 < μ < 1 (got μ = {mu}); integer μ is covered by the hypergeometric closed forms"
        )));
    }
    Ok(())
}

pub(crate) fn require_positive_lambda(lambda: f64, what: &str) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::precondition(format!("{what} needs λ > 0 (got λ = {lambda})")));
    }
    Ok(())
}

/// (μ)_k / k! for k = 0..=n.
pub(crate) fn pochhammer_over_factorial(mu: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    for k in 0..=n {
        out.push(c);
        c *= (mu + k as f64) / (k as f64 + 1.0);
    }
    out
}

/// Index of the first term whose magnitude exceeds its predecessor's.
pub(crate) fn first_increasing(terms: &[f64]) -> Option<usize> {
    terms.windows(2).position(|w| w[1] > w[0] && w[0] > 0.0).map(|i| i + 1)
}
