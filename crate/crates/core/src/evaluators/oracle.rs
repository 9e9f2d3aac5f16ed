use super::common::{cpow, real, ZERO};
use super::{Evaluation, Method, SeriesParams, Sign};
use crate::error::{Error, Result};
use crate::kernel::{alternating_accelerated_sum, alternating_accelerated_sum_complex, pfq_series, CompensatedComplexSum};
use num_complex::Complex64;

const GUARD_TERMS: usize = 20;
const MAX_TERMS: usize = 50_000_000;
/// Explicit terms before the Euler–Maclaurin tail in the λ = 0 plus case.
const EM_SPLIT: f64 = 1000.0;

/// Σ (±1)^n e^{−λn}/(n² + a²)^μ by compensated summation, with CRVZ
/// acceleration for λ = 0 (minus) and an Euler–Maclaurin tail for λ = 0
/// (plus, μ > ½).
pub fn direct_sum(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    p.validate()?;
    if p.lambda > 0.0 {
        return damped_sum(p, tol);
    }
    match p.sign {
        Sign::Minus => {
            if p.mu == 0.0 {
                return Err(Error::precondition("Σ(−1)^n does not converge; λ = 0 needs μ > 0"));
            }
            undamped_alternating(p, tol)
        }
        Sign::Plus => {
            if p.mu <= 0.5 {
                return Err(Error::Divergence(format!(
                    "Σ 1/(n² + a²)^μ diverges for μ = {} ≤ ½",
                    p.mu
                )));
            }
            undamped_plus(p)
        }
    }
}

fn term(p: &SeriesParams, n: usize) -> Complex64 {
    let nf = n as f64;
    let base = p.a * p.a + nf * nf;
    let weight = (-p.lambda * nf).exp();
    let signed = if p.sign == Sign::Minus && n % 2 == 1 { -weight } else { weight };
    signed * cpow(base, -p.mu)
}

fn damped_sum(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    let tol = tol.max(f64::EPSILON * 0.25);
    let mut sum = CompensatedComplexSum::new();
    let geometric = 1.0 / (1.0 - (-p.lambda).exp());
    // Beyond this index |n² + a²| grows with n.
    let monotone_from = (-(p.a * p.a).re).max(0.0).sqrt().ceil() as usize;
    let mut guard = None;
    let mut bound = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let t = term(p, n);
        sum.add(t);
        let nf = n as f64;
        bound = (-p.lambda * (nf + 1.0)).exp() * cpow(p.a * p.a + nf * nf, -p.mu).norm() * geometric;
        match guard {
            None if n >= monotone_from && bound <= tol * sum.value().norm() => guard = Some(n + GUARD_TERMS),
            Some(stop) if n >= stop => {
                return Ok(Evaluation::new(sum.value(), Method::DirectSum)
                    .with_error(bound)
                    .with_truncation(n + 1));
            }
            _ => {}
        }
    }
    Err(Error::NonConvergence { iterations: MAX_TERMS, last_delta: bound })
}

fn undamped_alternating(p: &SeriesParams, tol: f64) -> Result<Evaluation> {
    let tol = tol.max(1e-15);
    let s = if p.is_real() {
        let a2 = p.a.re * p.a.re;
        let mu = p.mu;
        alternating_accelerated_sum(
            |n| {
                let v = (n as f64 * n as f64 + a2).powf(-mu);
                if n % 2 == 0 {
                    v
                } else {
                    -v
                }
            },
            tol,
        )?
    } else {
        alternating_accelerated_sum_complex(|n| term(p, n), tol)?
    };
    Ok(Evaluation::new(s.value, Method::DirectSum)
        .with_error(s.last_term_magnitude)
        .with_truncation(s.terms_used)
        .note("λ = 0: Cohen–Rodriguez Villegas–Zagier acceleration"))
}

fn undamped_plus(p: &SeriesParams) -> Result<Evaluation> {
    let mu = p.mu;
    let c = p.a * p.a;
    let split = EM_SPLIT.max(2.0 * p.a.norm() + 10.0).ceil();
    let n_split = split as usize;
    let mut sum = CompensatedComplexSum::new();
    for n in (0..n_split).rev() {
        sum.add(term(p, n));
    }
    // ∫_N^∞ (t² + c)^{−μ} dt = N^{1−2μ}/(2μ−1) · ₂F₁(μ, μ−½; μ+½; −c/N²)
    let z = -c / (split * split);
    let f21 = pfq_series(&[real(mu), real(mu - 0.5)], &[real(mu + 0.5)], z, 1e-17)?;
    let integral = split.powf(1.0 - 2.0 * mu) / (2.0 * mu - 1.0) * f21.value;
    let g = c + split * split;
    let f0 = cpow(g, -mu);
    let f1 = -2.0 * mu * split * cpow(g, -mu - 1.0);
    let f3 = 12.0 * mu * (mu + 1.0) * split * cpow(g, -mu - 2.0)
        - 8.0 * mu * (mu + 1.0) * (mu + 2.0) * split.powi(3) * cpow(g, -mu - 3.0);
    let tail = integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0;
    // Next Euler–Maclaurin correction is of order f⁽⁵⁾/30240.
    let err = (mu * (mu + 1.0) * (mu + 2.0) * (mu + 3.0) * (mu + 4.0)).abs() * 32.0 * split.powf(-2.0 * mu - 5.0) / 30240.0;
    sum.add(tail);
    Ok(Evaluation::new(sum.value(), Method::DirectSum)
        .with_error(err)
        .with_truncation(n_split)
        .note("λ = 0: Euler–Maclaurin tail"))
}

/// Relative discrepancy between −(1/(2μa)) ∂S_μ/∂a (central difference with
/// step h, via [`direct_sum`]) and S_{μ+1}.
pub fn mu_step_check(p: &SeriesParams, h: f64) -> Result<f64> {
    p.validate()?;
    if !p.is_real() {
        return Err(Error::precondition("mu_step_check needs real a"));
    }
    if !(h > 0.0) || h >= p.a.re {
        return Err(Error::precondition(format!("step h = {h} must lie in (0, a)")));
    }
    let tol = 1e-17;
    let a = p.a.re;
    let up = direct_sum(&p.with_a(real(a + h)), tol)?.value;
    let down = direct_sum(&p.with_a(real(a - h)), tol)?.value;
    let derivative = (up - down) / (2.0 * h);
    let predicted = -derivative / (2.0 * p.mu * a);
    let target = direct_sum(&p.with_mu(p.mu + 1.0), tol)?.value;
    if target == ZERO {
        return Ok((predicted - target).norm());
    }
    Ok((predicted - target).norm() / target.norm())
}
