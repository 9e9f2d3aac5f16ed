//! Modified Bessel function K_ν(z) of real order and complex argument,
//! principal branch, `|arg z| < π`.
//!
//! Three regimes: the Hankel asymptotic series for `|z| ≥ 20`, the integral
//! `K_ν(z) = ∫₀^∞ e^{−z cosh t} cosh(νt) dt` by the trapezoidal rule below
//! that, and a Laplace-type integral on a rotated ray once `|arg z|`
//! approaches π/2. The trapezoidal rule converges geometrically because the
//! integrand is entire and decays double-exponentially; the width of the
//! strip of analyticity shrinks like `π/2 − |arg z|`.

use super::gamma::gamma_real;
use super::quadrature::{integrate, QuadratureSpec};
use super::ComplexValue;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `|z|` at and above which the asymptotic series is tried first.
pub const ASYMPTOTIC_THRESHOLD: f64 = 20.0;
/// Term cap for the asymptotic series.
pub const MAX_ASYMPTOTIC_TERMS: usize = 30;
/// Smallest-term size (relative) at which a stalled expansion is still accepted.
const ACCEPTABLE_LAST_TERM: f64 = 1e-14;
/// Beyond this |arg z| the trapezoidal rule gives way to the rotated ray.
const ROTATE_FROM: f64 = 1.2;
const MAX_ORDER: f64 = 10.0;

fn check_args(nu: f64, z: ComplexValue) -> Result<f64> {
    if !nu.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("K_ν needs finite order and argument"));
    }
    if z.norm() == 0.0 || (z.im == 0.0 && z.re < 0.0) {
        return Err(Error::domain(format!("K_ν needs |arg z| < π, got z = {z}")));
    }
    if nu.abs() > MAX_ORDER {
        return Err(Error::domain(format!("K_ν order |ν| = {} exceeds {MAX_ORDER}", nu.abs())));
    }
    // K_{−ν} = K_ν
    Ok(nu.abs())
}

/// K_ν(z), choosing the regime from `|z|`.
pub fn kv_complex(nu: f64, z: ComplexValue) -> Result<ComplexValue> {
    check_args(nu, z)?;
    if z.norm() >= ASYMPTOTIC_THRESHOLD {
        match kv_asymptotic(nu, z) {
            Ok((v, _)) => return Ok(v),
            Err(Error::NonConvergence { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if z.arg().abs() > ROTATE_FROM {
        return kv_rotated(nu, z).map(|(v, _)| v);
    }
    kv_integral(nu, z).map(|(v, _)| v)
}

/// Hankel expansion `√(π/2z) e^{−z} Σ a_k(ν)/z^k`, at most
/// [`MAX_ASYMPTOTIC_TERMS`] terms. Returns the value and the magnitude of the
/// first omitted term.
pub fn kv_asymptotic(nu: f64, z: ComplexValue) -> Result<(ComplexValue, f64)> {
    let nu = check_args(nu, z)?;
    let mu4 = 4.0 * nu * nu;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let prefactor = (PI / (2.0 * z)).sqrt() * (-z).exp();
    let mut last = f64::INFINITY;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        term *= (mu4 - odd * odd) / (8.0 * k as f64 * z);
        let size = term.norm();
        if size == 0.0 {
            return Ok((prefactor * sum, 0.0));
        }
        // Past the smallest term the series only gets worse.
        if k as f64 > nu + 1.0 && size > last {
            break;
        }
        sum += term;
        last = size;
        if size <= 1e-17 * sum.norm() {
            return Ok((prefactor * sum, size * prefactor.norm()));
        }
    }
    if last <= ACCEPTABLE_LAST_TERM * sum.norm() {
        return Ok((prefactor * sum, last * prefactor.norm()));
    }
    Err(Error::NonConvergence {
        iterations: MAX_ASYMPTOTIC_TERMS,
        last_delta: last,
    })
}

/// `√π (z/2)^ν/Γ(ν+½) ∫₁^∞ e^{−zt}(t²−1)^{ν−½} dt` along the ray
/// `t = 1 + r e^{−i arg z}`, on which the exponential decays monotonically.
/// Returns the value and the quadrature's last refinement change.
pub fn kv_rotated(nu: f64, z: ComplexValue) -> Result<(ComplexValue, f64)> {
    let nu = check_args(nu, z)?;
    let rho = z.norm();
    let phi = z.arg();
    let dir = Complex64::from_polar(1.0, -phi);
    let e = nu - 0.5;
    let spec = QuadratureSpec::semi_infinite(0.0).with_singularity((-e).max(0.0));
    // r = u/|z|, so that e^{−z(t−1)} = e^{−u}
    let r = integrate(
        |u| {
            let w = u / rho;
            (-u).exp() * w.powf(e) * (2.0 + w * dir).powf(e)
        },
        &spec,
    )?;
    let scale = PI.sqrt() * (0.5 * z).powf(nu) / gamma_real(nu + 0.5)? * (-z).exp() * Complex64::from_polar(1.0, -phi * (e + 1.0))
        / rho;
    Ok((scale * r.value, scale.norm() * r.last_term_magnitude))
}

/// Trapezoidal evaluation of `∫₀^∞ e^{−z cosh t} cosh(νt) dt` with step
/// halving, `Re z > 0`. Returns the value and the last refinement change.
pub fn kv_integral(nu: f64, z: ComplexValue) -> Result<(ComplexValue, f64)> {
    let nu = check_args(nu, z)?;
    if z.re <= 0.0 {
        return Err(Error::domain(format!("the cosh integral needs Re z > 0, got z = {z}")));
    }
    let upper = truncation_point(nu, z.re);

    // Scaled integrand e^{−z (cosh t − 1)} cosh(νt); cosh t − 1 = 2 sinh²(t/2).
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        (-z * (2.0 * s * s)).exp() * (nu * t).cosh()
    };

    const MAX_POINTS: usize = 1 << 22;
    let mut n = 16usize;
    let mut h = upper / n as f64;
    let mut sum = 0.5 * f(0.0);
    let mut abs_sum = sum.norm();
    for j in 1..n {
        let v = f(j as f64 * h);
        sum += v;
        abs_sum += v.norm();
    }
    let mut estimate = sum * h;
    loop {
        // Halve the step: only odd nodes are new.
        let mut added = Complex64::new(0.0, 0.0);
        let mut added_abs = 0.0;
        for j in 0..n {
            let v = f((2 * j + 1) as f64 * 0.5 * h);
            added += v;
            added_abs += v.norm();
        }
        sum += added;
        abs_sum += added_abs;
        n *= 2;
        h *= 0.5;
        let refined = sum * h;
        let delta = (refined - estimate).norm();
        estimate = refined;
        if !estimate.re.is_finite() || !estimate.im.is_finite() {
            return Err(Error::NonConvergence { iterations: n, last_delta: f64::NAN });
        }
        if n >= 128 && delta <= 4.0 * f64::EPSILON * abs_sum * h {
            let scale = (-z).exp();
            return Ok((estimate * scale, delta * scale.norm()));
        }
        if n >= MAX_POINTS {
            return Err(Error::NonConvergence { iterations: n, last_delta: delta });
        }
    }
}

/// Point beyond which the integrand is below e^{−45} of its peak.
fn truncation_point(nu: f64, x: f64) -> f64 {
    let log_size = |t: f64| {
        let s = (0.5 * t).sinh();
        -x * 2.0 * s * s + nu * t
    };
    let mut peak = 0.0f64;
    let mut t = 0.0;
    loop {
        t += 0.05;
        let g = log_size(t);
        peak = peak.max(g);
        if g < peak - 45.0 {
            return t;
        }
    }
}
