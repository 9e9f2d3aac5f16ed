use super::common::{cpow, first_increasing, leading_term, pochhammer_over_factorial, real, require_positive_lambda, sin_over_sinh, ZERO};
use super::tail::bessel_tail_minus;
use super::{Evaluation, Method, SeriesParams, Sign};
use crate::coefficients::{a_coefficients, b_coefficients, MAX_A_INDEX};
use crate::error::{Error, Result};
use crate::kernel::{alternating_accelerated_sum, gamma_real, integrate, CompensatedComplexSum, QuadratureSpec};
use std::f64::consts::PI;

/// Above this |a| (real a only) the small-a series is summed with CRVZ
/// acceleration instead of plain partial sums.
const ACCELERATE_FROM: f64 = 0.85;
const DEFAULT_TAIL_TERMS: usize = 64;

fn require_mu_below_one(mu: f64, what: &str) -> Result<()> {
    if !(mu < 1.0) {
        return Err(Error::precondition(format!("{what} needs μ < 1 (got μ = {mu})")));
    }
    Ok(())
}

/// H⁻ = a^{1−2μ} ∫₀¹ sin(λat)/sinh(πat) (1−t²)^{−μ} dt, integrated in
/// s = 1 − t so that the endpoint singularity sits at the origin.
pub fn h_minus_quadrature(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    p.validate()?;
    require_mu_below_one(p.mu, "h_minus_quadrature")?;
    if p.lambda == 0.0 {
        return Ok(Evaluation::new(ZERO, Method::HMinusQuadrature).note("λ = 0: integrand vanishes"));
    }
    let (a, lambda, mu) = (p.a, p.lambda, p.mu);
    let spec = QuadratureSpec::finite(0.0, 1.0).with_singularity(mu).with_tol(tol);
    let r = integrate(
        |s| {
            let t = 1.0 - s;
            let kernel = sin_over_sinh(lambda * a * t, PI * a * t, lambda / PI);
            kernel * (s * (2.0 - s)).powf(-mu)
        },
        &spec,
    )?;
    let scale = cpow(a, 1.0 - 2.0 * mu);
    Ok(Evaluation::new(scale * r.value, Method::HMinusQuadrature)
        .with_error(scale.norm() * r.last_term_magnitude)
        .with_truncation(r.terms_used))
}

/// Convergent expansion of H⁻ in powers of a², for |a| < 1.
pub fn small_a_minus(p: &SeriesParams, k_max: usize) -> Result<Evaluation> {
    p.validate()?;
    require_mu_below_one(p.mu, "small_a_minus")?;
    if p.lambda == 0.0 {
        return Ok(Evaluation::new(ZERO, Method::SmallAMinus).note("λ = 0: prefactor vanishes"));
    }
    let (a, lambda, mu) = (p.a, p.lambda, p.mu);
    if a.norm() > 1.0 {
        return Err(Error::Divergence(format!("small-a series needs |a| ≤ 1, got |a| = {}", a.norm())));
    }
    let prefactor = lambda * cpow(a, 1.0 - 2.0 * mu) / (2.0 * PI) * gamma_real(1.0 - mu)?;
    let accelerate = p.is_real() && a.re >= ACCELERATE_FROM;
    let n = if accelerate { MAX_A_INDEX } else { k_max.min(MAX_A_INDEX) };
    let table = a_coefficients(lambda, n)?;
    // Γ(k+½)/Γ(k+3/2−μ)
    let mut ratio = Vec::with_capacity(n + 1);
    let mut r = gamma_real(0.5)? / gamma_real(1.5 - mu)?;
    for k in 0..=n {
        ratio.push(r);
        r *= (k as f64 + 0.5) / (k as f64 + 1.5 - mu);
    }
    if accelerate {
        let x2 = a.re * a.re;
        let s = alternating_accelerated_sum(
            |k| {
                let t = table.values[k] * ratio[k] * x2.powi(k as i32);
                if k % 2 == 0 {
                    t
                } else {
                    -t
                }
            },
            1e-16,
        )?;
        return Ok(Evaluation::new(prefactor * s.value, Method::SmallAMinus)
            .with_error(prefactor.norm() * s.last_term_magnitude)
            .with_truncation(s.terms_used)
            .note("summed with alternating-series acceleration near the radius of convergence"));
    }
    let a2 = a * a;
    let mut sum = CompensatedComplexSum::new();
    let mut power = real(1.0);
    let mut last = f64::INFINITY;
    let mut used = 0;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * table.values[k] * ratio[k] * power;
        let mag = term.norm();
        if k >= 2 && mag >= last && mag > 1e-300 {
            return Err(Error::NonConvergence { iterations: k, last_delta: mag });
        }
        sum.add(term);
        used = k + 1;
        last = mag;
        if mag <= 1e-17 * sum.value().norm() {
            break;
        }
        power *= a2;
    }
    Ok(Evaluation::new(prefactor * sum.value(), Method::SmallAMinus)
        .with_error(prefactor.norm() * last)
        .with_truncation(used))
}

/// 1/(2a^{2μ}) + a^{−2μ} Σ_{k≤K} (μ)_k B_k/(k! a^{2k}).
pub fn algebraic_minus(p: &SeriesParams, k_max: usize) -> Result<Evaluation> {
    p.validate()?;
    require_positive_lambda(p.lambda, "algebraic_minus")?;
    let (a, mu) = (p.a, p.mu);
    let table = b_coefficients(p.lambda, k_max + 1)?;
    let poch = pochhammer_over_factorial(mu, k_max + 1);
    let inv_a2 = 1.0 / (a * a);
    let mut sum = CompensatedComplexSum::new();
    let mut power = real(1.0);
    let mut magnitudes = Vec::with_capacity(k_max + 2);
    let mut omitted = 0.0;
    for k in 0..=k_max + 1 {
        let term = poch[k] * table.values[k] * power;
        magnitudes.push(term.norm());
        if k <= k_max {
            sum.add(term);
        } else {
            omitted = term.norm();
        }
        power *= inv_a2;
    }
    let scale = cpow(a, -2.0 * mu);
    let mut ev = Evaluation::new(leading_term(mu, a) + scale * sum.value(), Method::AlgebraicMinus)
        .with_error(scale.norm() * omitted)
        .with_truncation(k_max);
    if let Some(i) = first_increasing(&magnitudes) {
        ev = ev.note(format!("terms start increasing at k = {i}"));
    }
    Ok(ev)
}

/// Exact representation 1/(2a^{2μ}) + H⁻ + T for 0 < μ < 1.
pub fn full_minus(p: &SeriesParams) -> Result<Evaluation> {
    p.validate()?;
    let sp = SeriesParams { sign: Sign::Minus, ..*p };
    let (tail, _) = bessel_tail_minus(&sp, DEFAULT_TAIL_TERMS)?;
    let h = h_minus_quadrature(&sp, 1e-15)?;
    let value = leading_term(p.mu, p.a) + h.value + tail.value;
    Ok(Evaluation::new(value, Method::FullMinus)
        .with_error(h.error_estimate + tail.error_estimate)
        .with_truncation(h.truncation_index)
        .with_tail_terms(tail.tail_terms_used))
}
