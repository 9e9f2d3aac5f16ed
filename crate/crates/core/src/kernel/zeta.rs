use super::ComplexValue;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// B_2, B_4, …, B_28.
const BERNOULLI_EVEN: [f64; 14] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
];

const DIRECT_TERMS: usize = 25;

fn power(base: Complex64, s: f64) -> Complex64 {
    if s == s.trunc() && s.abs() < 64.0 {
        base.powi(s as i32)
    } else {
        base.powf(s)
    }
}

/// Hurwitz zeta ζ(s, q) = Σ_{n≥0} (n + q)^{−s} for real `s > 1` and
/// `Re q > 0`, by Euler–Maclaurin summation after 25 direct terms.
pub fn hurwitz_zeta(s: f64, q: ComplexValue) -> Result<ComplexValue> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("Hurwitz zeta needs s > 1, got {s}")));
    }
    if !(q.re > 0.0) || !q.im.is_finite() {
        return Err(Error::domain(format!("Hurwitz zeta needs Re q > 0, got {q}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    // Smallest terms first.
    for n in (0..DIRECT_TERMS).rev() {
        sum += power(q + n as f64, -s);
    }
    let w = q + DIRECT_TERMS as f64;
    let w_s = power(w, -s);
    let mut tail = w * w_s / (s - 1.0) + 0.5 * w_s;
    // Σ B_2j/(2j)! (s)_{2j−1} w^{−s−2j+1}
    let inv_w2 = 1.0 / (w * w);
    let mut factor = w_s / w * s; // (s)_1 w^{−s−1}
    let mut fact = 2.0; // (2j)!
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j + 1;
        tail += factor * (b / fact);
        let m = 2 * j;
        // advance (s)_{2j−1} → (s)_{2j+1} and w power by two
        factor *= (s + (m - 1) as f64) * (s + m as f64) * inv_w2;
        fact *= ((m + 1) * (m + 2)) as f64;
    }
    Ok(sum + tail)
}
