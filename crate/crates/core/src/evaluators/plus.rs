use super::common::{cpow, damped_sin_over_sinh, first_increasing, leading_term, pochhammer_over_factorial, real, require_positive_lambda, ZERO};
use super::tail::bessel_tail_plus;
use super::{Evaluation, Method, SeriesParams, Sign};
use crate::coefficients::bhat_coefficients;
use crate::error::{Error, Result};
use crate::kernel::{integrate, CompensatedComplexSum, QuadratureSpec};
use std::f64::consts::PI;

const DEFAULT_TAIL_TERMS: usize = 64;

/// J = ∫₀^∞ e^{−λt}(t² + a²)^{−μ} dt, integrated in u = λt.
pub fn j_mu_quadrature(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    p.validate()?;
    require_positive_lambda(p.lambda, "j_mu_quadrature")?;
    let (a, lambda, mu) = (p.a, p.lambda, p.mu);
    if mu == 0.0 {
        return Ok(Evaluation::new(real(1.0 / lambda), Method::JMuQuadrature));
    }
    let a2 = a * a;
    let spec = QuadratureSpec::semi_infinite(0.0).with_tol(tol);
    let r = integrate(
        |u| {
            let t = u / lambda;
            (-u).exp() * cpow(a2 + t * t, -mu)
        },
        &spec,
    )?;
    Ok(Evaluation::new(r.value / lambda, Method::JMuQuadrature)
        .with_error(r.last_term_magnitude / lambda)
        .with_truncation(r.terms_used))
}

/// (a^{1−2μ}/2) Σ_{k≤K} (−1)^k (½)_k (μ)_k/(½λa)^{2k+1}.
pub fn j_mu_asymptotic(p: &SeriesParams, k_max: usize) -> Result<Evaluation> {
    p.validate()?;
    require_positive_lambda(p.lambda, "j_mu_asymptotic")?;
    let (a, mu) = (p.a, p.mu);
    let z = 0.5 * p.lambda * a;
    let inv_z2 = 1.0 / (z * z);
    let mut sum = CompensatedComplexSum::new();
    let mut term = 1.0 / z;
    let mut magnitudes = Vec::with_capacity(k_max + 2);
    let mut omitted = 0.0;
    for k in 0..=k_max + 1 {
        magnitudes.push(term.norm());
        if k <= k_max {
            sum.add(term);
        } else {
            omitted = term.norm();
        }
        let kf = k as f64;
        term *= -(kf + 0.5) * (mu + kf) * inv_z2;
    }
    let scale = 0.5 * cpow(a, 1.0 - 2.0 * mu);
    let mut ev = Evaluation::new(scale * sum.value(), Method::JMuAsymptotic)
        .with_error(scale.norm() * omitted)
        .with_truncation(k_max);
    if let Some(i) = first_increasing(&magnitudes) {
        ev = ev.note(format!("terms start increasing at k = {i}"));
    }
    Ok(ev)
}

/// H⁺ = a^{1−2μ} ∫₀¹ e^{−πau} sin(λau)/sinh(πau) (1−u²)^{−μ} du.
pub fn h_plus_quadrature(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    p.validate()?;
    if !(p.mu < 1.0) {
        return Err(Error::precondition(format!("h_plus_quadrature needs μ < 1 (got μ = {})", p.mu)));
    }
    if p.lambda == 0.0 {
        return Ok(Evaluation::new(ZERO, Method::HPlusQuadrature).note("λ = 0: integrand vanishes"));
    }
    let (a, lambda, mu) = (p.a, p.lambda, p.mu);
    let spec = QuadratureSpec::finite(0.0, 1.0).with_singularity(mu).with_tol(tol);
    let r = integrate(
        |s| {
            let u = 1.0 - s;
            damped_sin_over_sinh(lambda * a * u, PI * a * u, lambda / PI) * (s * (2.0 - s)).powf(-mu)
        },
        &spec,
    )?;
    let scale = cpow(a, 1.0 - 2.0 * mu);
    Ok(Evaluation::new(scale * r.value, Method::HPlusQuadrature)
        .with_error(scale.norm() * r.last_term_magnitude)
        .with_truncation(r.terms_used))
}

/// 1/(2a^{2μ}) + J (asymptotic, K terms) + a^{−2μ} Σ_{k≤K} (−1)^k (μ)_k B̂_k/(k! a^{2k}).
pub fn algebraic_plus(p: &SeriesParams, k_max: usize) -> Result<Evaluation> {
    p.validate()?;
    require_positive_lambda(p.lambda, "algebraic_plus")?;
    let (a, mu) = (p.a, p.mu);
    let j = j_mu_asymptotic(p, k_max)?;
    let table = bhat_coefficients(p.lambda, k_max + 1)?;
    let poch = pochhammer_over_factorial(mu, k_max + 1);
    let inv_a2 = 1.0 / (a * a);
    let mut sum = CompensatedComplexSum::new();
    let mut power = real(1.0);
    let mut magnitudes = Vec::with_capacity(k_max + 2);
    let mut omitted = 0.0;
    for k in 0..=k_max + 1 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * poch[k] * table.values[k] * power;
        magnitudes.push(term.norm());
        if k <= k_max {
            sum.add(term);
        } else {
            omitted = term.norm();
        }
        power *= inv_a2;
    }
    let scale = cpow(a, -2.0 * mu);
    let value = leading_term(mu, a) + j.value + scale * sum.value();
    let mut ev = Evaluation::new(value, Method::AlgebraicPlus)
        .with_error(scale.norm() * omitted + j.error_estimate)
        .with_truncation(k_max);
    if let Some(i) = first_increasing(&magnitudes) {
        ev = ev.note(format!("B̂ terms start increasing at k = {i}"));
    }
    if !j.notes.is_empty() {
        ev = ev.note(format!("J: {}", j.notes));
    }
    for w in &table.warnings {
        ev = ev.note(w);
    }
    Ok(ev)
}

/// Exact representation 1/(2a^{2μ}) + J + H⁺ + T̂ for 0 < μ < 1.
pub fn full_plus(p: &SeriesParams) -> Result<Evaluation> {
    p.validate()?;
    let sp = SeriesParams { sign: Sign::Plus, ..*p };
    let (tail, _) = bessel_tail_plus(&sp, DEFAULT_TAIL_TERMS)?;
    require_positive_lambda(p.lambda, "full_plus")?;
    let j = j_mu_quadrature(&sp, 1e-15)?;
    let h = h_plus_quadrature(&sp, 1e-15)?;
    let value = leading_term(p.mu, p.a) + j.value + h.value + tail.value;
    Ok(Evaluation::new(value, Method::FullPlus)
        .with_error(j.error_estimate + h.error_estimate + tail.error_estimate)
        .with_truncation(h.truncation_index)
        .with_tail_terms(tail.tail_terms_used))
}
