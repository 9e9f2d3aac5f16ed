use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact coefficient ring for [`PowerSeries`].
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero_value() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// The value as a rational constant, when it is one.
    fn as_scalar(&self) -> Option<BigRational>;
    fn div_scalar(&self, s: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn as_scalar(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn div_scalar(&self, s: &BigRational) -> Self {
        self / s
    }
}

/// Dense polynomial with rational coefficients in one auxiliary variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly(pub Vec<BigRational>);

impl RationalPoly {
    pub fn constant(c: BigRational) -> Self {
        RationalPoly(vec![c])
    }

    /// c·t^power.
    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut v = vec![BigRational::zero(); power + 1];
        v[power] = c;
        RationalPoly(v)
    }

    fn trimmed(mut v: Vec<BigRational>) -> Self {
        while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        if v.is_empty() {
            v.push(BigRational::zero());
        }
        RationalPoly(v)
    }
}

impl Coefficient for RationalPoly {
    fn zero_value() -> Self {
        RationalPoly(vec![BigRational::zero()])
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Self::trimmed(v)
    }

    fn sub(&self, other: &Self) -> Self {
        let neg = RationalPoly(other.0.iter().map(|c| -c).collect());
        self.add(&neg)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    fn as_scalar(&self) -> Option<BigRational> {
        if self.0.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.0[0].clone())
        } else {
            None
        }
    }

    fn div_scalar(&self, s: &BigRational) -> Self {
        RationalPoly(self.0.iter().map(|c| c / s).collect())
    }
}

/// Truncated series Σ_{k≤K} c_k x^{2k} with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        Self { coeffs }
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> C) -> Self {
        Self { coeffs: (0..len).map(f).collect() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero_value)
    }

    /// Product truncated to `len` coefficients.
    pub fn mul(&self, other: &Self, len: usize) -> Self {
        let coeffs = (0..len)
            .map(|k| {
                (0..=k).fold(C::zero_value(), |acc, j| acc.add(&self.coeff(j).mul(&other.coeff(k - j))))
            })
            .collect();
        Self { coeffs }
    }

    /// Quotient `self / other` truncated to `len` coefficients; the leading
    /// coefficient of `other` must be a nonzero constant.
    pub fn div(&self, other: &Self, len: usize) -> Result<Self> {
        if len == 0 {
            return Ok(Self { coeffs: Vec::new() });
        }
        let lead = other
            .coeffs
            .first()
            .and_then(|c| c.as_scalar())
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::precondition("series division needs a nonzero constant leading coefficient"))?;
        let mut q: Vec<C> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coeff(k);
            for j in 1..=k {
                let d = other.coeff(j);
                if d == C::zero_value() {
                    continue;
                }
                acc = acc.sub(&d.mul(&q[k - j]));
            }
            q.push(acc.div_scalar(&lead));
        }
        Ok(Self { coeffs: q })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

/// Row of binomial coefficients C(n, 0..=n).
fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// Coefficients Q_k (polynomials in L = λ², with the power of P = π²
/// implied by homogeneity of degree k) of
/// (sin λx / λx) / (sinh πx / πx) = Σ Q_k x^{2k}.
///
/// Uses the division recurrence on R_k = (2k+1)! Q_k, whose coefficients
/// keep small denominators:
/// R_k = (−1)^k L^k − Σ_{j≥1} P^j R_{k−j} C(2k+2, 2j+1)/(2k+2).
pub fn sin_over_sinh_series(len: usize) -> Result<PowerSeries<RationalPoly>> {
    let mut r: Vec<RationalPoly> = Vec::with_capacity(len);
    for k in 0..len {
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let mut acc = RationalPoly::monomial(sign, k);
        let row = binomial_row(2 * k + 2);
        let scale = BigRational::from_integer(BigInt::from(2 * k + 2));
        for j in 1..=k {
            // P^j carries no L, so only the scalar weight matters here.
            let w = BigRational::from_integer(row[2 * j + 1].clone()) / &scale;
            let term = RationalPoly(r[k - j].0.iter().map(|c| c * &w).collect());
            acc = acc.sub(&term);
        }
        r.push(acc);
    }
    let q = r
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.div_scalar(&BigRational::from_integer(factorial(2 * k + 1))))
        .collect();
    Ok(PowerSeries::new(q))
}

/// Coefficients e_j with coth x − 1/x = Σ_j e_j x^{2j+1}, the quotient
/// (x cosh x − sinh x)/(x sinh x).
///
/// Division recurrence on E_k = (2k+3)! e_k:
/// E_k = (2k+2) − Σ_{j≥1} E_{k−j} C(2k+4, 2j+1)/(2k+4).
pub fn coth_minus_inverse_series(len: usize) -> Result<PowerSeries<BigRational>> {
    let mut e: Vec<BigRational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = BigRational::from_integer(BigInt::from(2 * k + 2));
        let row = binomial_row(2 * k + 4);
        let scale = BigRational::from_integer(BigInt::from(2 * k + 4));
        for j in 1..=k {
            acc -= &e[k - j] * BigRational::from_integer(row[2 * j + 1].clone()) / &scale;
        }
        e.push(acc);
    }
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, c)| c / BigRational::from_integer(factorial(2 * k + 3)))
        .collect();
    Ok(PowerSeries::new(coeffs))
}

/// Same series as [`sin_over_sinh_series`] by plain power-series division
/// of the two Taylor expansions.
pub fn sin_over_sinh_series_by_division(len: usize) -> Result<PowerSeries<RationalPoly>> {
    let numerator = PowerSeries::from_fn(len, |k| {
        let c = inv_factorial(2 * k + 1);
        RationalPoly::monomial(if k % 2 == 0 { c } else { -c }, k)
    });
    let denominator = PowerSeries::from_fn(len, |k| RationalPoly::constant(inv_factorial(2 * k + 1)));
    numerator.div(&denominator, len)
}

/// Same series as [`coth_minus_inverse_series`] by plain division.
pub fn coth_minus_inverse_series_by_division(len: usize) -> Result<PowerSeries<BigRational>> {
    let numerator = PowerSeries::from_fn(len, |k| inv_factorial(2 * k + 2) - inv_factorial(2 * k + 3));
    let denominator = PowerSeries::from_fn(len, |k| inv_factorial(2 * k + 1));
    numerator.div(&denominator, len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn paper_listing_through_third_order() {
        let s = sin_over_sinh_series(4).unwrap();
        let c = s.coeffs();
        assert_eq!(c[0], RationalPoly(vec![q(1, 1)]));
        // Q_1 = −(L + P)/6, stored as coefficients of L^i P^{1−i}
        assert_eq!(c[1], RationalPoly(vec![q(-1, 6), q(-1, 6)]));
        assert_eq!(c[2], RationalPoly(vec![q(7, 360), q(10, 360), q(3, 360)]));
        assert_eq!(c[3], RationalPoly(vec![q(-31, 15120), q(-49, 15120), q(-21, 15120), q(-3, 15120)]));
    }

    #[test]
    fn coth_series_matches_bernoulli_values() {
        // coth x − 1/x = x/3 − x³/45 + 2x⁵/945 − x⁷/4725 + …
        let s = coth_minus_inverse_series(4).unwrap();
        assert_eq!(s.coeffs(), &[q(1, 3), q(-1, 45), q(2, 945), q(-1, 4725)]);
    }

    #[test]
    fn scaled_recurrences_match_plain_division() {
        assert_eq!(sin_over_sinh_series(14).unwrap(), sin_over_sinh_series_by_division(14).unwrap());
        assert_eq!(coth_minus_inverse_series(30).unwrap(), coth_minus_inverse_series_by_division(30).unwrap());
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = PowerSeries::new(vec![q(1, 1), q(2, 3), q(-5, 7), q(1, 11)]);
        let b = PowerSeries::new(vec![q(2, 1), q(1, 1), q(0, 1), q(3, 2)]);
        let prod = a.mul(&b, 4);
        assert_eq!(prod.div(&b, 4).unwrap(), a);
    }

    #[test]
    fn zero_leading_coefficient_rejected() {
        let a = PowerSeries::new(vec![q(1, 1)]);
        let b = PowerSeries::new(vec![q(0, 1), q(1, 1)]);
        assert!(a.div(&b, 2).is_err());
    }
}
