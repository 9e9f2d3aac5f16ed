use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// Largest derivative order accepted by the generators.
pub const MAX_DERIVATIVE_ORDER: usize = 200;

/// Which function the polynomial variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariableKind {
    Tanh,
    Coth,
}

/// Exact polynomial p(u) with d^m/dx^m f(x) = p(f(x)) for f = tanh or coth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPolynomial {
    coeffs: Vec<BigRational>,
    kind: VariableKind,
}

impl UPolynomial {
    /// p_0(u) = u.
    pub fn identity(kind: VariableKind) -> Self {
        Self { coeffs: vec![BigRational::zero(), BigRational::from_integer(1.into())], kind }
    }

    pub fn kind(&self) -> VariableKind {
        self.kind
    }

    /// Coefficients indexed by power of u; the last one is nonzero.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// One application of d/dx, using f′ = 1 − f² for both kinds:
    /// q(u) = (1 − u²) p′(u).
    pub fn differentiate(&self) -> Self {
        let d = self.coeffs.len();
        let mut out = vec![BigRational::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let scaled = c * BigRational::from_integer(BigInt::from(i));
            out[i - 1] += &scaled;
            out[i + 1] -= &scaled;
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Self { coeffs: out, kind: self.kind }
    }

    /// Exact evaluation. Integer coefficients (the only kind the
    /// derivative recurrence produces) take a gcd-free integer Horner pass.
    pub fn eval_exact(&self, u: &BigRational) -> BigRational {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            let (m, den) = (u.numer(), u.denom());
            let d = self.degree();
            let mut den_pow = BigInt::one();
            let mut acc = self.coeffs[d].to_integer();
            for c in self.coeffs[..d].iter().rev() {
                den_pow *= den;
                acc = acc * m + c.to_integer() * &den_pow;
            }
            return BigRational::new(acc, den_pow);
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Evaluates at the binary64 value `u`, exactly, before rounding once.
    pub fn eval(&self, u: f64) -> f64 {
        match BigRational::from_float(u) {
            Some(r) => self.eval_exact(&r).to_f64().unwrap_or(f64::NAN),
            None => f64::NAN,
        }
    }
}

impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·u")?,
                _ => write!(f, "{c}·u^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_order(m: usize) -> Result<()> {
    if m > MAX_DERIVATIVE_ORDER {
        return Err(Error::precondition(format!(
            "derivative order {m} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    Ok(())
}

fn derivative_poly(kind: VariableKind, m: usize) -> Result<UPolynomial> {
    check_order(m)?;
    let mut p = UPolynomial::identity(kind);
    for _ in 0..m {
        p = p.differentiate();
    }
    Ok(p)
}

/// p_m with d^m/dx^m tanh x = p_m(tanh x).
pub fn tanh_derivative_poly(m: usize) -> Result<UPolynomial> {
    derivative_poly(VariableKind::Tanh, m)
}

/// p_m with d^m/dx^m coth x = p_m(coth x).
pub fn coth_derivative_poly(m: usize) -> Result<UPolynomial> {
    derivative_poly(VariableKind::Coth, m)
}

/// All of p_0 … p_m in one pass.
pub fn derivative_polys_through(kind: VariableKind, m: usize) -> Result<Vec<UPolynomial>> {
    check_order(m)?;
    let mut out = Vec::with_capacity(m + 1);
    out.push(UPolynomial::identity(kind));
    for j in 0..m {
        let next = out[j].differentiate();
        out.push(next);
    }
    Ok(out)
}

/// Memo of previously generated polynomials; requests extend the table from
/// the highest order already present.
#[derive(Debug, Clone)]
pub struct DerivativeCache {
    polys: Vec<UPolynomial>,
}

impl DerivativeCache {
    pub fn new(kind: VariableKind) -> Self {
        Self { polys: vec![UPolynomial::identity(kind)] }
    }

    pub fn get(&mut self, m: usize) -> Result<&UPolynomial> {
        check_order(m)?;
        while self.polys.len() <= m {
            let next = self.polys.last().expect("cache is never empty").differentiate();
            self.polys.push(next);
        }
        Ok(&self.polys[m])
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}
