use super::{ordered_map, ReportRow, RowBase};
use crate::error::{Error, Result};
use crate::evaluators::{bessel_tail_minus, mu_step_check, SeriesParams, Sign};
use crate::kernel::extended::Extended;
use std::f64::consts::PI;

/// Working precision of the remainder computations.
const EXTENDED_BITS: usize = 160;
/// Values of a for the decay-rate fit.
pub const DECAY_GRID: [f64; 6] = [5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
const TAIL_AGREEMENT_TOL: f64 = 1e-11;
const SLOPE_TOL: f64 = 0.02;
const MU_STEP_BOUND: f64 = 1e-7;

/// The remainder S − H⁻ − 1/(2a^{2μ}) against the Bessel tail, μ = ½, λ = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TailAgreement {
    pub a: f64,
    /// S − H⁻ − 1/(2a^{2μ}) from the extended-precision sum and quadrature.
    pub remainder: f64,
    /// The Bessel tail T.
    pub tail: f64,
    pub rel_difference: f64,
    /// Decimal exponent of the remainder.
    pub exponent: i32,
}

impl TailAgreement {
    /// Both values to 12 significant digits.
    pub fn digits(&self) -> (String, String) {
        (format!("{:.11e}", self.remainder), format!("{:.11e}", self.tail))
    }

    pub fn to_row(&self) -> ReportRow {
        let base = RowBase {
            table: "tail".into(),
            row_id: format!("a={}/exponent={}", self.a, self.exponent),
            sign: Sign::Minus,
            mu: 0.5,
            lambda: 1.0,
            a_re: self.a,
            a_im: 0.0,
            k: None,
        };
        ReportRow::compared(base, self.tail, self.remainder, TAIL_AGREEMENT_TOL)
    }
}

pub fn tail_agreement_check(a: f64) -> Result<TailAgreement> {
    let (mu, lambda) = (0.5, 1.0);
    let x = Extended::new(EXTENDED_BITS)?;
    let remainder = x.to_f64(&x.exponential_remainder(Sign::Minus, mu, lambda, a)?);
    let p = SeriesParams::real(Sign::Minus, mu, lambda, a)?;
    let tail = bessel_tail_minus(&p, 64)?.0.value.re;
    Ok(TailAgreement {
        a,
        remainder,
        tail,
        rel_difference: (remainder - tail).abs() / tail.abs(),
        exponent: remainder.abs().log10().floor() as i32,
    })
}

/// Least-squares slope of ln|R(a)| + (2μ−1) ln a against a, where R is the
/// exponentially small remainder left after the leading term and the
/// branch-point integrals (and J for the plus series).
pub fn decay_rate_fit(sign: Sign, mu: f64, lambda: f64, a_grid: &[f64]) -> Result<f64> {
    if a_grid.len() < 4 {
        return Err(Error::precondition("the decay-rate fit needs at least 4 grid points"));
    }
    if a_grid.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::precondition("the decay-rate fit needs real a > 0"));
    }
    let points = ordered_map(a_grid, |&a| -> Result<(f64, f64)> {
        let x = Extended::new(EXTENDED_BITS)?;
        let r = x.to_f64(&x.exponential_remainder(sign, mu, lambda, a)?).abs();
        if !(r > 1e6 * x.epsilon()) {
            return Err(Error::precondition(format!(
                "remainder at a = {a} is below the working precision; shrink the grid"
            )));
        }
        Ok((a, r.ln() + (2.0 * mu - 1.0) * a.ln()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(sxy / sxx)
}

fn failed_row(base: RowBase, reference: Option<f64>) -> ReportRow {
    ReportRow {
        table: base.table,
        row_id: base.row_id,
        sign: base.sign,
        mu: base.mu,
        lambda: base.lambda,
        a_re: base.a_re,
        a_im: base.a_im,
        k: base.k,
        computed: f64::NAN,
        reference,
        rel_error: None,
        pass: false,
        tolerance_used: 0.0,
    }
}

/// Tail agreement at a = 3 and 4, both decay fits and the μ-step
/// recurrence, as report rows.
pub fn check_suite() -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for a in [3.0, 4.0] {
        rows.push(match tail_agreement_check(a) {
            Ok(t) => t.to_row(),
            Err(_) => failed_row(
                RowBase {
                    table: "tail".into(),
                    row_id: format!("a={a}"),
                    sign: Sign::Minus,
                    mu: 0.5,
                    lambda: 1.0,
                    a_re: a,
                    a_im: 0.0,
                    k: None,
                },
                None,
            ),
        });
    }
    for (sign, mu, expected) in [(Sign::Minus, 0.5, -PI), (Sign::Plus, 0.25, -2.0 * PI)] {
        let base = RowBase {
            table: "decay".into(),
            row_id: format!("{sign}/a=5..10"),
            sign,
            mu,
            lambda: 1.0,
            a_re: DECAY_GRID[0],
            a_im: 0.0,
            k: None,
        };
        rows.push(match decay_rate_fit(sign, mu, 1.0, &DECAY_GRID) {
            Ok(slope) => ReportRow::compared(base, slope, expected, SLOPE_TOL),
            Err(_) => failed_row(base, Some(expected)),
        });
    }
    let p = SeriesParams { mu: 0.5, lambda: 1.0, a: num_complex::Complex64::new(4.0, 0.0), sign: Sign::Minus };
    let base = |row_id: &str| RowBase {
        table: "mu-step".into(),
        row_id: row_id.into(),
        sign: Sign::Minus,
        mu: 0.5,
        lambda: 1.0,
        a_re: 4.0,
        a_im: 0.0,
        k: None,
    };
    let fine = mu_step_check(&p, 1e-4);
    rows.push(match &fine {
        Ok(d) => ReportRow::bounded(base("h=1e-4"), *d, MU_STEP_BOUND),
        Err(_) => failed_row(base("h=1e-4"), None),
    });
    let ratio = fine.and_then(|d| Ok(d / mu_step_check(&p, 5e-5)?));
    rows.push(match ratio {
        Ok(r) => ReportRow::compared(base("halving-ratio"), r, 4.0, 0.125),
        Err(_) => failed_row(base("halving-ratio"), Some(4.0)),
    });
    rows
}
