//! Evaluation routes for S_μ^±(a;λ).

mod common;
mod minus;
mod oracle;
mod plus;
mod special;
mod tail;

pub use minus::{algebraic_minus, full_minus, h_minus_quadrature, small_a_minus};
pub use oracle::{direct_sum, mu_step_check};
pub use plus::{algebraic_plus, full_plus, h_plus_quadrature, j_mu_asymptotic, j_mu_quadrature};
pub use special::{integer_mu_closed_form, lambda0_plus, olver_lambda0_minus};
pub use tail::{bessel_tail_minus, bessel_tail_plus, tail_display_value, TailTerm};

use crate::error::{Error, Result};
use crate::kernel::ComplexValue;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which of the two series: alternating (`Minus`) or not (`Plus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// +1 for `Plus`, −1 for `Minus`.
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(Error::domain(format!("unknown sign '{other}'"))),
        }
    }
}

/// A full parameter point (μ, λ, a, ±).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    pub mu: f64,
    pub lambda: f64,
    pub a: ComplexValue,
    pub sign: Sign,
}

impl SeriesParams {
    /// Validated constructor: μ ≥ 0, λ ≥ 0, Re a > 0.
    pub fn new(sign: Sign, mu: f64, lambda: f64, a: ComplexValue) -> Result<Self> {
        let p = Self { mu, lambda, a, sign };
        p.validate()?;
        Ok(p)
    }

    pub fn real(sign: Sign, mu: f64, lambda: f64, a: f64) -> Result<Self> {
        Self::new(sign, mu, lambda, ComplexValue::new(a, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu >= 0.0) || !self.mu.is_finite() {
            return Err(Error::domain(format!("μ must be a finite value ≥ 0, got {}", self.mu)));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::domain(format!("λ must be a finite value ≥ 0, got {}", self.lambda)));
        }
        if !(self.a.re > 0.0) || !self.a.im.is_finite() || !self.a.re.is_finite() {
            return Err(Error::domain(format!("a must satisfy |arg a| < π/2, got {}", self.a)));
        }
        Ok(())
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0
    }

    pub fn with_a(self, a: ComplexValue) -> Self {
        Self { a, ..self }
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }
}

/// Tag naming the route that produced an [`Evaluation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSum,
    HMinusQuadrature,
    SmallAMinus,
    AlgebraicMinus,
    BesselTailMinus,
    FullMinus,
    JMuQuadrature,
    JMuAsymptotic,
    HPlusQuadrature,
    AlgebraicPlus,
    BesselTailPlus,
    FullPlus,
    OlverLambda0Minus,
    Lambda0Plus,
    IntegerMuClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSum => "direct-sum",
            Method::HMinusQuadrature => "h-minus-quadrature",
            Method::SmallAMinus => "small-a-minus",
            Method::AlgebraicMinus => "algebraic-minus",
            Method::BesselTailMinus => "bessel-tail-minus",
            Method::FullMinus => "full-minus",
            Method::JMuQuadrature => "j-mu-quadrature",
            Method::JMuAsymptotic => "j-mu-asymptotic",
            Method::HPlusQuadrature => "h-plus-quadrature",
            Method::AlgebraicPlus => "algebraic-plus",
            Method::BesselTailPlus => "bessel-tail-plus",
            Method::FullPlus => "full-plus",
            Method::OlverLambda0Minus => "olver-lambda0-minus",
            Method::Lambda0Plus => "lambda0-plus",
            Method::IntegerMuClosedForm => "integer-mu-closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed value with its provenance and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: ComplexValue,
    pub method: Method,
    pub error_estimate: f64,
    pub truncation_index: usize,
    pub tail_terms_used: usize,
    pub notes: String,
}

impl Evaluation {
    pub(crate) fn new(value: ComplexValue, method: Method) -> Self {
        Self { value, method, error_estimate: 0.0, truncation_index: 0, tail_terms_used: 0, notes: String::new() }
    }

    pub(crate) fn with_error(mut self, e: f64) -> Self {
        self.error_estimate = e.abs();
        self
    }

    pub(crate) fn with_truncation(mut self, k: usize) -> Self {
        self.truncation_index = k;
        self
    }

    pub(crate) fn with_tail_terms(mut self, n: usize) -> Self {
        self.tail_terms_used = n;
        self
    }

    pub(crate) fn note(mut self, text: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
        self
    }
}

/// User-facing route selector: one entry per family, resolved to the
/// sign-specific evaluator by [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Oracle,
    SmallA,
    Algebraic,
    Full,
    Tail,
    JMu,
    IntegerMu,
    Lambda0,
}

impl Route {
    pub const ALL: [Route; 8] = [
        Route::Oracle,
        Route::SmallA,
        Route::Algebraic,
        Route::Full,
        Route::Tail,
        Route::JMu,
        Route::IntegerMu,
        Route::Lambda0,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Oracle => "oracle",
            Route::SmallA => "small-a",
            Route::Algebraic => "algebraic",
            Route::Full => "full",
            Route::Tail => "tail",
            Route::JMu => "j-mu",
            Route::IntegerMu => "integer-mu",
            Route::Lambda0 => "lambda0",
        }
    }

    /// `full` when the exact representation applies (0 < μ < 1), the oracle
    /// otherwise.
    pub fn default_for(p: &SeriesParams) -> Route {
        if p.mu > 0.0 && p.mu < 1.0 && p.lambda > 0.0 {
            Route::Full
        } else {
            Route::Oracle
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

/// Truncation and tolerance knobs shared by every route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteOptions {
    /// Truncation index for the asymptotic and small-a expansions.
    pub k: usize,
    /// Tolerance for the oracle and the quadratures.
    pub tol: f64,
    /// Maximum number of Bessel-tail terms.
    pub tail_terms: usize,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self { k: 8, tol: 1e-12, tail_terms: 64 }
    }
}

/// Evaluates `p` by the requested route.
pub fn evaluate(route: Route, p: &SeriesParams, opts: &RouteOptions) -> Result<Evaluation> {
    match (route, p.sign) {
        (Route::Oracle, _) => direct_sum(p, opts.tol),
        (Route::SmallA, Sign::Minus) => {
            let h = small_a_minus(p, opts.k)?;
            let value = common::leading_term(p.mu, p.a) + h.value;
            let tail = bessel_tail_minus(p, opts.tail_terms)?.0;
            Ok(Evaluation { value: value + tail.value, tail_terms_used: tail.tail_terms_used, ..h })
        }
        (Route::SmallA, Sign::Plus) => Err(Error::precondition("the small-a expansion exists for the minus series only")),
        (Route::Algebraic, Sign::Minus) => algebraic_minus(p, opts.k),
        (Route::Algebraic, Sign::Plus) => algebraic_plus(p, opts.k),
        (Route::Full, Sign::Minus) => full_minus(p),
        (Route::Full, Sign::Plus) => full_plus(p),
        (Route::Tail, Sign::Minus) => bessel_tail_minus(p, opts.tail_terms).map(|r| r.0),
        (Route::Tail, Sign::Plus) => bessel_tail_plus(p, opts.tail_terms).map(|r| r.0),
        (Route::JMu, _) => j_mu_quadrature(p, opts.tol),
        (Route::IntegerMu, _) => {
            if p.mu.fract() != 0.0 || p.mu > 5.0 {
                return Err(Error::precondition(format!("integer-mu needs μ ∈ {{0, …, 5}}, got μ = {}", p.mu)));
            }
            integer_mu_closed_form(p.mu as usize, p)
        }
        (Route::Lambda0, sign) => {
            if p.lambda != 0.0 {
                return Err(Error::precondition(format!("lambda0 needs λ = 0, got λ = {}", p.lambda)));
            }
            match sign {
                Sign::Minus => olver_lambda0_minus(p.mu, p.a, opts.tail_terms),
                Sign::Plus => lambda0_plus(p.mu, p.a, opts.tail_terms),
            }
        }
    }
}
