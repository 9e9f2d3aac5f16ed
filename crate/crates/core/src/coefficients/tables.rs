use super::power_series::{coth_minus_inverse_series, sin_over_sinh_series};
use super::upoly::{derivative_polys_through, VariableKind};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub const MAX_A_INDEX: usize = 60;
pub const MAX_B_INDEX: usize = 100;

/// Below this λ the direct B̂_k form loses every digit to cancellation.
pub const BHAT_SMALL_LAMBDA: f64 = 0.05;

/// Switch to the partial-fraction route once both other routes would
/// amplify rounding by more than this factor.
const BHAT_AMPLIFICATION_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientKind {
    A,
    B,
    Bhat,
}

impl fmt::Display for CoefficientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientKind::A => "A",
            CoefficientKind::B => "B",
            CoefficientKind::Bhat => "Bhat",
        })
    }
}

impl FromStr for CoefficientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CoefficientKind::A),
            "B" | "b" => Ok(CoefficientKind::B),
            "Bhat" | "bhat" | "BHAT" => Ok(CoefficientKind::Bhat),
            other => Err(Error::domain(format!("unknown coefficient kind '{other}' (expected A, B or Bhat)"))),
        }
    }
}

/// Numeric values c_0 … c_K of one coefficient family at a given λ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub kind: CoefficientKind,
    pub lambda: f64,
    pub values: Vec<f64>,
    pub k_max: usize,
    pub warnings: Vec<String>,
}

impl CoefficientTable {
    pub fn get(&self, k: usize) -> Option<f64> {
        self.values.get(k).copied()
    }
}

/// How a single B̂_k was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhatRoute {
    /// 2^{−2k−1}[p_{2k}(coth x) − (2k)!/x^{2k+1}]
    Direct,
    /// Differentiated Taylor series of coth x − 1/x.
    Series,
    /// 2^{−2k−1}(2k)! Σ_{n≠0} (x + inπ)^{−2k−1}
    PartialFractions,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::precondition(format!("coefficients need λ > 0, got {lambda}")));
    }
    Ok(())
}

fn check_k(k_max: usize, limit: usize, kind: CoefficientKind) -> Result<()> {
    if k_max > limit {
        return Err(Error::precondition(format!("{kind} coefficients are limited to K ≤ {limit}, got {k_max}")));
    }
    Ok(())
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A_0 … A_K at λ, defined by sin λx / sinh πx = (λ/π) Σ (−1)^k A_k x^{2k}.
pub fn a_coefficients(lambda: f64, k_max: usize) -> Result<CoefficientTable> {
    check_lambda(lambda)?;
    check_k(k_max, MAX_A_INDEX, CoefficientKind::A)?;
    let series = sin_over_sinh_series(k_max + 1)?;
    let l = lambda * lambda;
    let p = PI * PI;
    let values = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, poly)| {
            // Q_k = Σ_i q_i L^i P^{k−i}; A_k = (−1)^k Q_k
            let sum: f64 = poly
                .0
                .iter()
                .enumerate()
                .map(|(i, q)| to_f64(q) * l.powi(i as i32) * p.powi((k - i) as i32))
                .sum();
            if k % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect();
    Ok(CoefficientTable { kind: CoefficientKind::A, lambda, values, k_max, warnings: Vec::new() })
}

/// B_k = (−1)^k 2^{−2k−1} p_{2k}(tanh(λ/2)).
pub fn b_coefficients(lambda: f64, k_max: usize) -> Result<CoefficientTable> {
    check_lambda(lambda)?;
    check_k(k_max, MAX_B_INDEX, CoefficientKind::B)?;
    let polys = derivative_polys_through(VariableKind::Tanh, 2 * k_max)?;
    let u = exact((0.5 * lambda).tanh());
    let values = (0..=k_max)
        .map(|k| {
            let v = polys[2 * k].eval_exact(&u) / pow2(2 * k + 1);
            let v = to_f64(&v);
            if k % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    Ok(CoefficientTable { kind: CoefficientKind::B, lambda, values, k_max, warnings: Vec::new() })
}

/// Route that [`bhat_coefficients`] uses for index k at x = λ/2.
pub fn bhat_route(lambda: f64, k: usize) -> BhatRoute {
    let x = 0.5 * lambda;
    let r = (x * x + PI * PI).sqrt();
    let e = (2 * k + 1) as f64;
    let amp_direct = (r / x).powf(e);
    let amp_series = if x < PI { (r / (PI - x)).powf(e) } else { f64::INFINITY };
    let best = amp_direct.min(amp_series);
    if k >= 1 && best > BHAT_AMPLIFICATION_LIMIT {
        BhatRoute::PartialFractions
    } else if amp_series < amp_direct {
        BhatRoute::Series
    } else {
        BhatRoute::Direct
    }
}

/// B̂_k = 2^{−2k−1}[p_{2k}(coth(λ/2)) − (2k)!/(λ/2)^{2k+1}], each index
/// through whichever of three equivalent routes is best conditioned.
pub fn bhat_coefficients(lambda: f64, k_max: usize) -> Result<CoefficientTable> {
    check_lambda(lambda)?;
    check_k(k_max, MAX_B_INDEX, CoefficientKind::Bhat)?;
    let x = 0.5 * lambda;
    let routes: Vec<BhatRoute> = (0..=k_max).map(|k| bhat_route(lambda, k)).collect();

    let polys = if routes.contains(&BhatRoute::Direct) {
        derivative_polys_through(VariableKind::Coth, 2 * k_max)?
    } else {
        Vec::new()
    };
    let series_len = routes
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == BhatRoute::Series)
        .map(|(k, _)| series_terms(x, k))
        .max()
        .unwrap_or(0);
    let series = coth_series_f64(series_len)?;

    let xr = exact(x);
    let values = routes
        .iter()
        .enumerate()
        .map(|(k, route)| match route {
            BhatRoute::Direct => {
                let u = exact(1.0 / x.tanh());
                let singular = BigRational::from_integer(factorial(2 * k)) / pow_exact(&xr, 2 * k + 1);
                to_f64(&((polys[2 * k].eval_exact(&u) - singular) / pow2(2 * k + 1)))
            }
            BhatRoute::Series => bhat_by_series(&series, x, k),
            BhatRoute::PartialFractions => bhat_by_partial_fractions(x, k),
        })
        .collect();

    let mut warnings = Vec::new();
    if lambda < BHAT_SMALL_LAMBDA {
        warnings.push(format!(
            "λ = {lambda} < {BHAT_SMALL_LAMBDA}: direct form cancels catastrophically, series fallback used"
        ));
    }
    Ok(CoefficientTable { kind: CoefficientKind::Bhat, lambda, values, k_max, warnings })
}

fn pow_exact(x: &BigRational, n: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

/// Terms of the coth series needed so the 2k-th derivative is converged at
/// x < π: the differentiated terms peak near j ≈ k/(1 − x/π).
fn series_terms(x: f64, k: usize) -> usize {
    let peak = (k as f64 / (1.0 - x / PI)).ceil() as usize;
    2 * peak + 80
}

/// Number of leading coth-series coefficients taken from the exact
/// rational expansion; later ones equal (−1)^j 2ζ(2j+2)/π^{2j+2} with ζ
/// indistinguishable from 1 + 2^{−2j−2} + 3^{−2j−2} in binary64.
const EXACT_COTH_TERMS: usize = 40;

fn coth_series_f64(len: usize) -> Result<Vec<f64>> {
    let exact = coth_minus_inverse_series(len.min(EXACT_COTH_TERMS))?;
    let mut out: Vec<f64> = exact.coeffs().iter().map(to_f64).collect();
    for j in out.len()..len {
        let s = (2 * j + 2) as f64;
        let zeta = 1.0 + (-s).exp2() + 3f64.powf(-s);
        let v = 2.0 * zeta * (-s * PI.ln()).exp();
        out.push(if j % 2 == 0 { v } else { -v });
    }
    Ok(out)
}

fn bhat_by_series(e: &[f64], x: f64, k: usize) -> f64 {
    // 2^{−2k−1} Σ_{j≥k} e_j (2j+1)!/(2j+1−2k)! x^{2j+1−2k}, in log space
    let terms = series_terms(x, k).min(e.len());
    let ln_x = x.ln();
    let mut ln_falling = ln_factorial(2 * k + 1);
    let base = -((2 * k + 1) as f64) * std::f64::consts::LN_2;
    let mut sum = 0.0;
    for j in k..terms {
        if j > k {
            ln_falling += (((2 * j) * (2 * j + 1)) as f64).ln() - (((2 * j - 2 * k) * (2 * j + 1 - 2 * k)) as f64).ln();
        }
        if e[j] == 0.0 {
            continue;
        }
        let ln_term = e[j].abs().ln() + ln_falling + ((2 * j + 1 - 2 * k) as f64) * ln_x + base;
        sum += e[j].signum() * ln_term.exp();
    }
    sum
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

fn bhat_by_partial_fractions(x: f64, k: usize) -> f64 {
    let s = (2 * k + 1) as i32;
    let log_scale = ln_factorial(2 * k) - (s as f64) * std::f64::consts::LN_2;
    let term = |n: f64| -> f64 {
        let z = Complex64::new(x, n * PI);
        // Re z^{−s}, scaled by the prefactor inside the exponent.
        let (r, theta) = z.to_polar();
        (log_scale - s as f64 * r.ln()).exp() * (s as f64 * theta).cos()
    };
    let mut sum = 0.0;
    let mut n = 1usize;
    loop {
        let t = term(n as f64);
        sum += t;
        let bound = (log_scale - s as f64 * (n as f64 * PI).ln()).exp();
        if bound <= 1e-18 * sum.abs() || n >= 1_000_000 {
            break;
        }
        n += 1;
    }
    // Midpoint tail ∫_{N+½}^∞ Re z^{−s} dn.
    let z = Complex64::new(x, (n as f64 + 0.5) * PI);
    let tail = (z.powi(-(2 * k as i32)) / Complex64::new(0.0, 2.0 * k as f64 * PI)).re * log_scale.exp();
    2.0 * (sum + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn a_values_at_unit_lambda() {
        let t = a_coefficients(1.0, 3).unwrap();
        assert_eq!(t.values[0], 1.0);
        assert!(rel(t.values[1], (1.0 + PI * PI) / 6.0) < 1e-15);
        let p2 = PI * PI;
        assert!(rel(t.values[2], (3.0 + 10.0 * p2 + 7.0 * p2 * p2) / 360.0) < 1e-15);
        let a3 = (3.0 + 21.0 * p2 + 49.0 * p2 * p2 + 31.0 * p2 * p2 * p2) / 15120.0;
        assert!(rel(t.values[3], a3) < 1e-15);
    }

    #[test]
    fn b_closed_forms() {
        let x = 0.5f64;
        let t = b_coefficients(1.0, 2).unwrap();
        assert!(rel(t.values[0], 0.5 * x.tanh()) < 1e-15);
        assert!(rel(t.values[1], x.sinh() / (4.0 * x.cosh().powi(3))) < 1e-15);
        let b2 = x.sinh() * (2.0 - x.sinh().powi(2)) / (4.0 * x.cosh().powi(5));
        assert!(rel(t.values[2], b2) < 1e-14);
    }

    #[test]
    fn bhat_closed_forms() {
        let x = 0.5f64;
        let t = bhat_coefficients(1.0, 2).unwrap();
        assert!(rel(t.values[0], 0.5 * (1.0 / x.tanh() - 1.0 / x)) < 1e-14);
        let b1 = 0.25 * (x.cosh() / x.sinh().powi(3) - 1.0 / x.powi(3));
        assert!(rel(t.values[1], b1) < 1e-13);
        // B̂_2 = (1/16)[(cosh²x + 2)/sinh⁵x·… ] checked through p_4
        let c = 1.0 / x.tanh();
        let p4 = 16.0 * c - 40.0 * c.powi(3) + 24.0 * c.powi(5);
        let direct = (p4 - 24.0 / x.powi(5)) / 32.0;
        assert!(rel(t.values[2], direct) < 1e-9);
    }

    #[test]
    fn bhat_routes_agree_where_both_are_accurate() {
        for lambda in [0.8, 1.5, 2.5] {
            let x = 0.5 * lambda;
            let e = coth_series_f64(200).unwrap();
            for k in 1..5 {
                let series = bhat_by_series(&e, x, k);
                let pf = bhat_by_partial_fractions(x, k);
                assert!(rel(series, pf) < 1e-12, "λ={lambda} k={k}: {series} vs {pf}");
            }
        }
    }

    #[test]
    fn bhat_small_lambda_vanishes() {
        let t = bhat_coefficients(1e-3, 6).unwrap();
        assert!(t.values.iter().all(|v| v.abs() < 1e-2));
        assert!(!t.warnings.is_empty());
    }

    #[test]
    fn large_index_tables_are_finite() {
        for lambda in [0.01, 1.0, 6.0] {
            let b = b_coefficients(lambda, 60).unwrap();
            let bh = bhat_coefficients(lambda, 60).unwrap();
            assert!(b.values.iter().chain(&bh.values).all(|v| v.is_finite()), "λ = {lambda}");
        }
        assert!(a_coefficients(1.0, 60).unwrap().values.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn limits_enforced() {
        assert!(a_coefficients(1.0, 61).is_err());
        assert!(b_coefficients(1.0, 101).is_err());
        assert!(b_coefficients(0.0, 3).is_err());
        assert!(bhat_coefficients(-1.0, 3).is_err());
    }
}
