//! Extended-precision evaluation of the series and its integral pieces for
//! real parameters. Used by oracles and by the decay-rate fit, where the
//! exponentially small remainders fall far below binary64 resolution.

use crate::error::{Error, Result};
use crate::evaluators::Sign;
use astro_float::{BigFloat, Consts, RoundingMode};
use std::cell::RefCell;

const RM: RoundingMode = RoundingMode::ToEven;
const MAX_LEVELS: usize = 9;
const MAX_NODES_PER_SIDE: usize = 4096;

/// Working context: precision in bits plus the constant cache.
pub struct Extended {
    p: usize,
    cc: RefCell<Consts>,
}

impl Extended {
    pub fn new(bits: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::domain(format!("extended precision setup: {e:?}")))?;
        Ok(Self { p: bits, cc: RefCell::new(cc) })
    }

    /// Unit roundoff 2^{−p} as f64.
    pub fn epsilon(&self) -> f64 {
        (-(self.p as f64)).exp2()
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    /// Nearest binary64 value (within one ulp), read off the top two
    /// mantissa words; flushes to zero below about 2^{−1074}.
    pub fn to_f64(&self, x: &BigFloat) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if x.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
            return f64::NAN;
        };
        let word = 2f64.powi(64);
        let hi = words.last().copied().unwrap_or(0) as f64;
        let lo = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
        // 0.m × 2^e, with the exponent split to avoid intermediate overflow
        let m = (hi + lo / word) / word;
        let v = m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if sign == astro_float::Sign::Neg {
            -v
        } else {
            v
        }
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc.borrow_mut())
    }

    /// a^e for a > 0 as exp(e ln a). The library's correctly rounded pow
    /// does not terminate when the result is exactly representable (4^{1/2}).
    fn powf(&self, a: &BigFloat, e: &BigFloat) -> BigFloat {
        let ln = a.ln(self.p, RM, &mut self.cc.borrow_mut());
        self.exp(&self.mul(e, &ln))
    }

    fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.p, RM)
    }

    fn magnitude(&self, x: &BigFloat) -> f64 {
        let v = self.to_f64(x).abs();
        if v == 0.0 && !x.is_zero() {
            f64::MIN_POSITIVE
        } else {
            v
        }
    }

    /// Σ_{n≥0} (±1)^n e^{−λn}/(n² + a²)^μ for λ > 0 and real a > 0.
    pub fn series_sum(&self, sign: Sign, mu: f64, lambda: f64, a: f64) -> Result<BigFloat> {
        if !(lambda > 0.0) || !(a > 0.0) {
            return Err(Error::precondition("extended series needs λ > 0 and real a > 0"));
        }
        let neg_mu = self.num(-mu);
        let a2 = self.mul(&self.num(a), &self.num(a));
        let ratio = self.exp(&self.num(-lambda));
        let ratio = if sign == Sign::Minus { ratio.neg() } else { ratio };
        let mut weight = self.num(1.0);
        let mut sum = self.num(0.0);
        let eps = self.epsilon();
        for n in 0..1_000_000u64 {
            let nf = BigFloat::from_u64(n, self.p);
            let base = self.add(&self.mul(&nf, &nf), &a2);
            let term = self.mul(&weight, &self.powf(&base, &neg_mu));
            sum = self.add(&sum, &term);
            // |term| bounds every later term when μ ≥ 0.
            let t = self.magnitude(&term);
            let s = self.magnitude(&sum);
            if n > 0 && t <= 0.25 * eps * s {
                return Ok(sum);
            }
            weight = self.mul(&weight, &ratio);
        }
        Err(Error::NonConvergence { iterations: 1_000_000, last_delta: f64::NAN })
    }

    /// a^{1−2μ} ∫₀¹ g(at) (1−t²)^{−μ} dt with g(s) = sin λs / sinh πs
    /// (minus) or e^{−πs} sin λs / sinh πs (plus).
    pub fn h_integral(&self, sign: Sign, mu: f64, lambda: f64, a: f64) -> Result<BigFloat> {
        let pi = self.pi();
        let neg_mu = self.num(-mu);
        let bl = self.num(lambda * a);
        let pa = self.mul(&pi, &self.num(a));
        let one = self.num(1.0);
        let integral = self.tanh_sinh_unit(|ctx, t, one_minus_t| {
            let s = ctx.mul(&bl, t).sin(ctx.p, RM, &mut ctx.cc.borrow_mut());
            let arg = ctx.mul(&pa, t);
            let mut g = ctx.div(&s, &arg.sinh(ctx.p, RM, &mut ctx.cc.borrow_mut()));
            if sign == Sign::Plus {
                g = ctx.mul(&g, &ctx.exp(&arg.neg()));
            }
            let w = ctx.mul(one_minus_t, &ctx.add(&one, t));
            ctx.mul(&g, &ctx.powf(&w, &neg_mu))
        })?;
        let scale = self.powf(&self.num(a), &self.num(1.0 - 2.0 * mu));
        Ok(self.mul(&scale, &integral))
    }

    /// ∫₀^∞ e^{−λt} (t² + a²)^{−μ} dt.
    pub fn j_integral(&self, mu: f64, lambda: f64, a: f64) -> Result<BigFloat> {
        let neg_mu = self.num(-mu);
        let nl = self.num(-lambda);
        let a2 = self.mul(&self.num(a), &self.num(a));
        self.exp_sinh_half_line(|ctx, t| {
            let base = ctx.add(&ctx.mul(t, t), &a2);
            let decay = ctx.exp(&ctx.mul(&nl, t));
            ctx.mul(&decay, &ctx.powf(&base, &neg_mu))
        })
    }

    /// The exponentially small part of the series: S − 1/(2a^{2μ}) − H⁻
    /// (minus) or S − 1/(2a^{2μ}) − J − H⁺ (plus).
    pub fn exponential_remainder(&self, sign: Sign, mu: f64, lambda: f64, a: f64) -> Result<BigFloat> {
        let s = self.series_sum(sign, mu, lambda, a)?;
        let mut r = self.sub(&s, &self.leading_term(mu, a));
        r = self.sub(&r, &self.h_integral(sign, mu, lambda, a)?);
        if sign == Sign::Plus {
            r = self.sub(&r, &self.j_integral(mu, lambda, a)?);
        }
        Ok(r)
    }

    /// 1/(2a^{2μ}).
    pub fn leading_term(&self, mu: f64, a: f64) -> BigFloat {
        let v = self.powf(&self.num(a), &self.num(-2.0 * mu));
        self.mul(&v, &self.num(0.5))
    }

    /// Tanh-sinh rule on (0, 1); the integrand receives both t and 1 − t,
    /// the latter computed without cancellation.
    fn tanh_sinh_unit<F>(&self, f: F) -> Result<BigFloat>
    where
        F: Fn(&Self, &BigFloat, &BigFloat) -> BigFloat,
    {
        let pi = self.pi();
        let half_pi = self.mul(&pi, &self.num(0.5));
        let one = self.num(1.0);
        let node = |ctx: &Self, tau: f64| -> (BigFloat, BigFloat, BigFloat) {
            let tb = ctx.num(tau);
            let sh = tb.sinh(ctx.p, RM, &mut ctx.cc.borrow_mut());
            let g = ctx.mul(&half_pi, &sh);
            // t = 1/(1 + e^{−2g}), 1 − t = 1/(1 + e^{2g})
            let e = ctx.exp(&ctx.mul(&g, &ctx.num(2.0)));
            let t = ctx.div(&e, &ctx.add(&one, &e));
            let c = ctx.div(&one, &ctx.add(&one, &e));
            let dt = ctx.mul(&ctx.mul(&pi, &tb.cosh(ctx.p, RM, &mut ctx.cc.borrow_mut())), &ctx.mul(&t, &c));
            (t, c, dt)
        };
        self.de_levels(node, f)
    }

    fn exp_sinh_half_line<F>(&self, f: F) -> Result<BigFloat>
    where
        F: Fn(&Self, &BigFloat) -> BigFloat,
    {
        let pi = self.pi();
        let half_pi = self.mul(&pi, &self.num(0.5));
        let node = |ctx: &Self, tau: f64| -> (BigFloat, BigFloat, BigFloat) {
            let tb = ctx.num(tau);
            let sh = tb.sinh(ctx.p, RM, &mut ctx.cc.borrow_mut());
            let t = ctx.exp(&ctx.mul(&half_pi, &sh));
            let dt = ctx.mul(&ctx.mul(&half_pi, &tb.cosh(ctx.p, RM, &mut ctx.cc.borrow_mut())), &t);
            (t.clone(), t, dt)
        };
        self.de_levels(node, |ctx, t, _| f(ctx, t))
    }

    fn de_levels<N, F>(&self, node: N, f: F) -> Result<BigFloat>
    where
        N: Fn(&Self, f64) -> (BigFloat, BigFloat, BigFloat),
        F: Fn(&Self, &BigFloat, &BigFloat) -> BigFloat,
    {
        let eps = self.epsilon();
        let mut sum = self.num(0.0);
        let mut h = 1.0f64;
        let mut estimate: Option<BigFloat> = None;
        for level in 0..=MAX_LEVELS {
            if level > 0 {
                h *= 0.5;
            }
            let (start, step) = if level == 0 { (0.0, 1.0) } else { (h, 2.0 * h) };
            if level == 0 {
                let (t, c, w) = node(self, 0.0);
                let v = f(self, &t, &c);
                sum = self.mul(&v, &w);
            }
            let reference = estimate.as_ref().map(|e| self.magnitude(e)).unwrap_or(0.0);
            for direction in [1.0, -1.0] {
                let mut quiet = 0;
                for i in 0..MAX_NODES_PER_SIDE {
                    let tau = direction * (start + step * i as f64);
                    if tau == 0.0 {
                        continue;
                    }
                    let (t, c, w) = node(self, tau);
                    let v = self.mul(&f(self, &t, &c), &w);
                    if v.is_nan() {
                        return Err(Error::IntegrandFailure(self.to_f64(&t)));
                    }
                    sum = self.add(&sum, &v);
                    let m = self.magnitude(&v);
                    let scale = reference.max(self.magnitude(&sum) * h);
                    if m <= eps * scale * 1e-3 || v.is_zero() {
                        quiet += 1;
                        if quiet >= 3 {
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
            }
            let current = self.mul(&sum, &self.num(h));
            if let Some(prev) = &estimate {
                let delta = self.sub(&current, prev);
                let d = self.magnitude(&delta);
                let s = self.magnitude(&current);
                // Doubly exponential convergence: the error after a level is
                // roughly the square of the relative change it produced.
                if level >= 4 && (d <= s * (eps * 64.0).sqrt() || d == 0.0) {
                    return Ok(current);
                }
            }
            estimate = Some(current);
        }
        Err(Error::NonConvergence { iterations: MAX_LEVELS, last_delta: f64::NAN })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Extended {
        Extended::new(160).unwrap()
    }

    #[test]
    fn series_matches_binary64_closed_form_at_mu_zero() {
        let x = ctx();
        let s = x.series_sum(Sign::Minus, 0.0, 1.0, 3.0).unwrap();
        let e = std::f64::consts::E;
        assert!((x.to_f64(&s) - e / (e + 1.0)).abs() < 1e-16);
    }

    #[test]
    fn j_integral_at_mu_zero_is_inverse_lambda() {
        let x = ctx();
        let j = x.j_integral(0.0, 2.0, 1.0).unwrap();
        let v = x.sub(&j, &x.num(0.5));
        assert!(x.magnitude(&v) < 1e-40);
    }

    #[test]
    fn unit_interval_beta_integral() {
        // ∫₀¹ (1 − t²)^{−1/2} dt = π/2 to full extended precision
        let x = ctx();
        let half = x.num(-0.5);
        let one = x.num(1.0);
        let v = x
            .tanh_sinh_unit(|c, t, omt| {
                let w = c.mul(omt, &c.add(&one, t));
                c.powf(&w, &half)
            })
            .unwrap();
        let half_pi = {
            let pi = x.pi();
            x.mul(&pi, &x.num(0.5))
        };
        let d = x.sub(&v, &half_pi);
        assert!(x.magnitude(&d) < 1e-40, "{}", x.magnitude(&d));
    }

    #[test]
    fn minus_representation_closes_with_tiny_remainder() {
        // S − 1/(2a^{2μ}) − H⁻ is exponentially small, about e^{−πa}
        let x = ctx();
        let (mu, lambda, a) = (0.5, 1.0, 8.0);
        let s = x.series_sum(Sign::Minus, mu, lambda, a).unwrap();
        let h = x.h_integral(Sign::Minus, mu, lambda, a).unwrap();
        let lead = x.leading_term(mu, a);
        let r = x.sub(&x.sub(&s, &lead), &h);
        let rv = x.to_f64(&r).abs();
        assert!(rv > 1e-13 && rv < 1e-10, "{rv}");
    }
}
