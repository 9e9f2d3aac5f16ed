use super::common::{cpow, leading_term, real, require_positive_lambda, ZERO};
use super::{Evaluation, Method, SeriesParams, Sign};
use crate::error::{Error, Result};
use crate::kernel::{gamma_real, kv_complex, pfq_series, CompensatedComplexSum, ComplexValue};
use num_complex::Complex64;
use std::f64::consts::PI;

const RELATIVE_CUTOFF: f64 = 1e-18;

/// Weights c_j and denominator D with S_n^± = Σ_j c_j ℱ_j / (D a^{2n}).
const INTEGER_MU_WEIGHTS: [(&[f64], f64); 5] = [
    (&[1.0], 2.0),
    (&[1.0, 1.0], 4.0),
    (&[3.0, 3.0, 2.0], 16.0),
    (&[5.0, 5.0, 4.0, 2.0], 32.0),
    (&[35.0, 35.0, 30.0, 20.0, 8.0], 256.0),
];

fn check_sector(a: ComplexValue) -> Result<()> {
    if !(a.re > 0.0) || !a.im.is_finite() {
        return Err(Error::domain(format!("a must satisfy |arg a| < π/2, got {a}")));
    }
    Ok(())
}

/// 2^{3/2−μ}√π/(a^{2μ−1}Γ(μ)) Σ_k K_{½−μ}(Y_k)/Y_k^{½−μ}, Y_k = (2k + offset)πa.
fn undamped_tail(mu: f64, a: ComplexValue, offset: f64, n_terms: usize) -> Result<(ComplexValue, f64, usize)> {
    let nu = 0.5 - mu;
    let scale = 2f64.powf(1.5 - mu) * PI.sqrt() / gamma_real(mu)? * cpow(a, 1.0 - 2.0 * mu);
    let mut sum = ZERO;
    let mut last = 0.0;
    let mut used = 0;
    for k in 0..n_terms {
        let y = ((2 * k) as f64 + offset) * PI * a;
        let term = kv_complex(nu, y)? * cpow(y, -nu);
        sum += term;
        used = k + 1;
        last = (scale * term).norm();
        if term.norm() <= RELATIVE_CUTOFF * sum.norm() {
            break;
        }
    }
    Ok((scale * sum, last, used))
}

/// Olver's λ = 0 formula for the alternating series, valid for any μ > 0.
pub fn olver_lambda0_minus(mu: f64, a: ComplexValue, n_terms: usize) -> Result<Evaluation> {
    check_sector(a)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::precondition(format!("the λ = 0 formula needs μ > 0 (got μ = {mu})")));
    }
    let (tail, err, used) = undamped_tail(mu, a, 1.0, n_terms.max(1))?;
    Ok(Evaluation::new(leading_term(mu, a) + tail, Method::OlverLambda0Minus)
        .with_error(err)
        .with_tail_terms(used))
}

/// λ = 0 formula for the non-alternating series, μ > ½.
pub fn lambda0_plus(mu: f64, a: ComplexValue, n_terms: usize) -> Result<Evaluation> {
    check_sector(a)?;
    if !(mu > 0.5) || !mu.is_finite() {
        return Err(Error::Divergence(format!("Σ 1/(n² + a²)^μ diverges for μ = {mu} ≤ ½")));
    }
    let j = PI.sqrt() * gamma_real(mu - 0.5)? / (2.0 * gamma_real(mu)?) * cpow(a, 1.0 - 2.0 * mu);
    let (tail, err, used) = undamped_tail(mu, a, 2.0, n_terms.max(1))?;
    Ok(Evaluation::new(leading_term(mu, a) + j + tail, Method::Lambda0Plus)
        .with_error(err)
        .with_tail_terms(used))
}

/// F_j(a) = _{j+1}F_j(1, ia, …, ia; 1+ia, …, 1+ia; z).
fn f_j(j: usize, a: ComplexValue, z: f64) -> Result<ComplexValue> {
    let ia = Complex64::new(0.0, 1.0) * a;
    let mut numerator = vec![real(1.0)];
    numerator.extend(std::iter::repeat(ia).take(j));
    let denominator = vec![1.0 + ia; j];
    Ok(pfq_series(&numerator, &denominator, real(z), 1e-17)?.value)
}

/// Hypergeometric closed forms for integer μ = n ∈ {0, …, 5}.
pub fn integer_mu_closed_form(n: usize, p: &SeriesParams) -> Result<Evaluation> {
    p.validate()?;
    require_positive_lambda(p.lambda, "integer_mu_closed_form")?;
    if p.mu != n as f64 {
        return Err(Error::precondition(format!("integer_mu_closed_form({n}) called with μ = {}", p.mu)));
    }
    let z = match p.sign {
        Sign::Plus => (-p.lambda).exp(),
        Sign::Minus => -(-p.lambda).exp(),
    };
    if n == 0 {
        return Ok(Evaluation::new(real(1.0 / (1.0 - z)), Method::IntegerMuClosedForm));
    }
    let (weights, denominator) = INTEGER_MU_WEIGHTS
        .get(n - 1)
        .ok_or_else(|| Error::precondition(format!("closed forms exist for μ ≤ 5, got μ = {n}")))?;
    let mut sum = CompensatedComplexSum::new();
    for (j, &c) in weights.iter().enumerate() {
        let fj = f_j(j + 1, p.a, z)? + f_j(j + 1, -p.a, z)?;
        sum.add(c * fj);
    }
    let value = sum.value() / (denominator * cpow(p.a, 2.0 * n as f64));
    Ok(Evaluation::new(value, Method::IntegerMuClosedForm).with_truncation(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluators::direct_sum;
    use crate::kernel::rel_diff;

    #[test]
    fn olver_at_mu_one() {
        let v = olver_lambda0_minus(1.0, real(1.0), 64).unwrap().value.re;
        assert!((v - 0.5 * (1.0 + PI / PI.sinh())).abs() < 1e-15);
    }

    #[test]
    fn lambda0_plus_cotangent_identity() {
        let v = lambda0_plus(1.0, real(1.0), 64).unwrap().value.re;
        assert!((v - 0.5 * (1.0 + PI / PI.tanh())).abs() < 1e-14);
        let a = 2.0;
        let v = lambda0_plus(1.0, real(a), 64).unwrap().value.re;
        let exact = PI / (PI * a).tanh() / (2.0 * a) + 1.0 / (2.0 * a * a);
        assert!((v - exact).abs() < 1e-15);
        assert!(lambda0_plus(0.5, real(1.0), 64).is_err());
    }

    #[test]
    fn closed_forms_match_oracle() {
        for (n, sign, a) in [(1, Sign::Minus, 3.0), (2, Sign::Plus, 1.5), (5, Sign::Plus, 2.0), (4, Sign::Minus, 0.7)] {
            let p = SeriesParams::real(sign, n as f64, 1.0, a).unwrap();
            let v = integer_mu_closed_form(n, &p).unwrap().value;
            let s = direct_sum(&p, 1e-16).unwrap().value;
            assert!(rel_diff(v, s) < 1e-12, "n = {n}: {v} vs {s}");
        }
    }

    #[test]
    fn closed_form_at_zero() {
        let p = SeriesParams::real(Sign::Minus, 0.0, 1.0, 2.0).unwrap();
        let e = std::f64::consts::E;
        let v = integer_mu_closed_form(0, &p).unwrap().value.re;
        assert!((v - e / (e + 1.0)).abs() < 1e-15);
    }
}
