//! Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
//! `[lower, ∞)`.
//!
//! Nodes near `lower` are generated as `lower + δ` with `δ` computed
//! directly, so an integrand with an algebraic singularity at the left
//! endpoint should be arranged with `lower = 0` and written in terms of the
//! distance to it. The declared exponent `α` of `(x − lower)^{−α}` drives the
//! truncation of the node sequence at that end.

use super::{ComplexValue, SeriesSum};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower: f64,
    /// May be `f64::INFINITY`.
    pub upper: f64,
    pub left_singularity_exponent: f64,
    pub target_rel_tol: f64,
    pub max_levels: usize,
}

impl QuadratureSpec {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            left_singularity_exponent: 0.0,
            target_rel_tol: 1e-15,
            max_levels: 10,
        }
    }

    pub fn semi_infinite(lower: f64) -> Self {
        Self::finite(lower, f64::INFINITY)
    }

    pub fn with_singularity(mut self, exponent: f64) -> Self {
        self.left_singularity_exponent = exponent;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_rel_tol = tol;
        self
    }

    pub fn with_max_levels(mut self, levels: usize) -> Self {
        self.max_levels = levels;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.left_singularity_exponent < 1.0) {
            return Err(Error::domain(format!(
                "endpoint exponent {} is not integrable",
                self.left_singularity_exponent
            )));
        }
        if !(self.target_rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerance must be positive"));
        }
        if !self.lower.is_finite() || self.upper.is_nan() || self.upper < self.lower {
            return Err(Error::domain(format!(
                "bad interval [{}, {}]",
                self.lower, self.upper
            )));
        }
        Ok(())
    }
}

/// One node of the transformed rule: abscissa, offset from the nearer
/// endpoint and weight.
struct Node {
    x: f64,
    offset: f64,
    weight: f64,
}

trait Transform {
    /// Node for parameter `t`, or `None` once the node has collapsed onto an
    /// endpoint (or run off to infinity).
    fn node(&self, t: f64) -> Option<Node>;
}

struct TanhSinh {
    lower: f64,
    upper: f64,
    half_width: f64,
}

impl Transform for TanhSinh {
    fn node(&self, t: f64) -> Option<Node> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        let offset = self.half_width * 2.0 * e / (1.0 + e);
        if offset < f64::MIN_POSITIVE {
            return None;
        }
        let weight = self.half_width * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let x = if t < 0.0 { self.lower + offset } else { self.upper - offset };
        Some(Node { x, offset, weight })
    }
}

struct ExpSinh {
    lower: f64,
}

impl Transform for ExpSinh {
    fn node(&self, t: f64) -> Option<Node> {
        let s = FRAC_PI_2 * t.sinh();
        let offset = s.exp();
        if offset < f64::MIN_POSITIVE || !offset.is_finite() {
            return None;
        }
        let weight = FRAC_PI_2 * t.cosh() * offset;
        if !weight.is_finite() {
            return None;
        }
        Some(Node { x: self.lower + offset, offset, weight })
    }
}

/// Integrates a complex-valued integrand. The returned [`SeriesSum`] carries
/// the number of integrand evaluations in `terms_used` and the final
/// refinement change in `last_term_magnitude`.
pub fn integrate<F>(f: F, spec: &QuadratureSpec) -> Result<SeriesSum>
where
    F: Fn(f64) -> ComplexValue,
{
    spec.validate()?;
    if spec.upper == spec.lower {
        return Ok(SeriesSum {
            value: Complex64::new(0.0, 0.0),
            terms_used: 0,
            last_term_magnitude: 0.0,
            converged: true,
        });
    }
    if spec.upper.is_infinite() {
        run(&f, &ExpSinh { lower: spec.lower }, spec, false)
    } else {
        let tr = TanhSinh {
            lower: spec.lower,
            upper: spec.upper,
            half_width: 0.5 * (spec.upper - spec.lower),
        };
        run(&f, &tr, spec, true)
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, spec: &QuadratureSpec) -> Result<SeriesSum>
where
    F: Fn(f64) -> f64,
{
    integrate(|x| Complex64::new(f(x), 0.0), spec)
}

struct Accumulator {
    sum: Complex64,
    abs_sum: f64,
    evaluations: usize,
}

fn run<F, T>(f: &F, tr: &T, spec: &QuadratureSpec, finite: bool) -> Result<SeriesSum>
where
    F: Fn(f64) -> ComplexValue,
    T: Transform,
{
    const MIN_LEVELS: usize = 3;
    let alpha = spec.left_singularity_exponent;
    let mut acc = Accumulator { sum: Complex64::new(0.0, 0.0), abs_sum: 0.0, evaluations: 0 };

    let mut h = 1.0;
    // Level 0 includes t = 0 and every integer t.
    sweep(f, tr, &mut acc, 0.0, 1.0, alpha, finite, None)?;
    let mut estimate = acc.sum * h;
    let mut delta = f64::INFINITY;

    for level in 1..=spec.max_levels {
        h *= 0.5;
        // New nodes sit at odd multiples of h.
        sweep(f, tr, &mut acc, h, 2.0 * h, alpha, finite, Some(estimate.norm()))?;
        let refined = acc.sum * h;
        delta = (refined - estimate).norm();
        estimate = refined;
        let noise = 8.0 * f64::EPSILON * acc.abs_sum * h;
        if level >= MIN_LEVELS && delta <= spec.target_rel_tol * estimate.norm() + noise {
            return Ok(SeriesSum {
                value: estimate,
                terms_used: acc.evaluations,
                last_term_magnitude: delta,
                converged: true,
            });
        }
    }
    Err(Error::NonConvergence { iterations: spec.max_levels, last_delta: delta })
}

/// Adds `f` at t = start, start ± step, start ± 2·step, … on both sides
/// (t = 0 only once).
#[allow(clippy::too_many_arguments)]
fn sweep<F, T>(
    f: &F,
    tr: &T,
    acc: &mut Accumulator,
    start: f64,
    step: f64,
    alpha: f64,
    finite: bool,
    scale: Option<f64>,
) -> Result<()>
where
    F: Fn(f64) -> ComplexValue,
    T: Transform,
{
    const T_LIMIT: f64 = 8.0;
    const NEGLIGIBLE: f64 = 1e-20;
    if start == 0.0 {
        let node = tr.node(0.0).expect("centre node exists");
        add(f, &node, acc)?;
    }
    for direction in [-1.0, 1.0] {
        let mut j = if start == 0.0 { 1.0 } else { 0.0 };
        let mut quiet = 0;
        loop {
            let t = direction * (start + j * step);
            if t.abs() > T_LIMIT {
                break;
            }
            let Some(node) = tr.node(t) else { break };
            let v = add(f, &node, acc)?;
            // Estimated mass beyond this node: |f| δ / (1 − α) near a
            // singular left end, |w f| elsewhere.
            let left_end = t < 0.0;
            let remaining = if left_end || finite {
                let exponent = if left_end { alpha } else { 0.0 };
                v.norm() * node.offset / (1.0 - exponent)
            } else {
                v.norm() * node.weight
            };
            if let Some(s) = scale {
                if remaining <= NEGLIGIBLE * s || (s == 0.0 && remaining == 0.0) {
                    quiet += 1;
                    if quiet >= 2 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
            } else if remaining == 0.0 && !finite && !left_end {
                break;
            }
            j += 1.0;
        }
    }
    Ok(())
}

fn add<F>(f: &F, node: &Node, acc: &mut Accumulator) -> Result<ComplexValue>
where
    F: Fn(f64) -> ComplexValue,
{
    let v = f(node.x);
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::IntegrandFailure(node.x));
    }
    let wv = v * node.weight;
    acc.sum += wv;
    acc.abs_sum += wv.norm();
    acc.evaluations += 1;
    Ok(v)
}
