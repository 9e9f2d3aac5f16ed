use super::common::{cpow, require_fractional_mu, ZERO};
use super::{Evaluation, Method, SeriesParams};
use crate::error::{Error, Result};
use crate::kernel::{arg, gamma_real, kv_complex, ComplexValue};
use num_complex::Complex64;
use std::f64::consts::PI;

const RELATIVE_CUTOFF: f64 = 1e-18;

/// One term of an exponentially small Bessel tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailTerm {
    pub k: usize,
    /// Argument X_k (or X̂_k) of the Macdonald function.
    pub x: ComplexValue,
    /// K_{½−μ}(X_k).
    pub kv: ComplexValue,
    /// arg(X^{μ−½} K_{½−μ}(X)) in (−π, π].
    pub theta: f64,
    /// |K_{½−μ}(X)/X^{½−μ}|.
    pub magnitude: f64,
}

/// Tail T of the alternating series, X_k = ((2k+1)π + iλ)a.
pub fn bessel_tail_minus(p: &SeriesParams, n_terms: usize) -> Result<(Evaluation, Vec<TailTerm>)> {
    tail(p, n_terms, 1.0, Method::BesselTailMinus)
}

/// Tail T̂ of the non-alternating series, X̂_k = ((2k+2)π + iλ)a.
pub fn bessel_tail_plus(p: &SeriesParams, n_terms: usize) -> Result<(Evaluation, Vec<TailTerm>)> {
    tail(p, n_terms, 2.0, Method::BesselTailPlus)
}

struct HalfTail {
    value: ComplexValue,
    last: f64,
    terms: Vec<TailTerm>,
}

/// i e^{−iπμ} a^{1−2μ} Γ(1−μ) π^{−½} Σ (2/X_k)^{½−μ} K_{½−μ}(X_k).
fn half_tail(mu: f64, lambda: f64, a: ComplexValue, offset: f64, n_terms: usize) -> Result<HalfTail> {
    let nu = 0.5 - mu;
    let prefactor = Complex64::new(0.0, 1.0)
        * Complex64::from_polar(1.0, -PI * mu)
        * cpow(a, 1.0 - 2.0 * mu)
        * gamma_real(1.0 - mu)?
        / PI.sqrt();
    let mut sum = ZERO;
    let mut terms = Vec::new();
    let mut last = 0.0;
    for k in 0..n_terms {
        let x = Complex64::new((2 * k) as f64 * PI + offset * PI, lambda) * a;
        let kv = kv_complex(nu, x)?;
        let reduced = kv * cpow(x, -nu);
        let term = 2f64.powf(nu) * reduced;
        terms.push(TailTerm { k, x, kv, theta: arg(reduced), magnitude: reduced.norm() });
        sum += term;
        last = (prefactor * term).norm();
        if term.norm() <= RELATIVE_CUTOFF * sum.norm() || term == ZERO {
            break;
        }
    }
    Ok(HalfTail { value: prefactor * sum, last, terms })
}

fn tail(p: &SeriesParams, n_terms: usize, offset: f64, method: Method) -> Result<(Evaluation, Vec<TailTerm>)> {
    p.validate()?;
    require_fractional_mu(p.mu, "the Bessel tail")?;
    if n_terms == 0 {
        return Err(Error::precondition("the Bessel tail needs at least one term"));
    }
    let upper = half_tail(p.mu, p.lambda, p.a, offset, n_terms)?;
    let used = upper.terms.len();
    let (value, err) = if p.is_real() {
        (Complex64::new(2.0 * upper.value.re, 0.0), 2.0 * upper.last)
    } else {
        // Schwarz reflection: T(a) = I(a) + conj(I(ā)).
        let lower = half_tail(p.mu, p.lambda, p.a.conj(), offset, n_terms)?;
        (upper.value + lower.value.conj(), upper.last + lower.last)
    };
    let mut ev = Evaluation::new(value, method).with_error(err).with_tail_terms(used);
    if used == n_terms && upper.last > RELATIVE_CUTOFF * value.norm() {
        ev = ev.note(format!("tail truncated at n_terms = {n_terms}"));
    }
    Ok((ev, upper.terms))
}

/// The sin(πμ − θ_k)/sin πμ form of a tail, rebuilt from its terms
/// (real a only).
pub fn tail_display_value(p: &SeriesParams, terms: &[TailTerm]) -> Result<f64> {
    require_fractional_mu(p.mu, "the Bessel tail")?;
    if !p.is_real() {
        return Err(Error::precondition("the display form of the tail needs real a"));
    }
    let mu = p.mu;
    let a = p.a.re;
    let scale = 2f64.powf(1.5 - mu) * PI.sqrt() * a.powf(1.0 - 2.0 * mu) / gamma_real(mu)?;
    let s: f64 = terms.iter().map(|t| t.magnitude * (PI * mu - t.theta).sin()).sum();
    Ok(scale * s / (PI * mu).sin())
}
