use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 671/128 with 14 terms (relative error ~1e-15).
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn lanczos_series(x: f64) -> f64 {
    let mut y = x;
    let mut ser = LANCZOS_C0;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    ser
}

/// Γ(x) for real `x`, with the reflection formula below 1/2.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_real(1.0 - x)?));
    }
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0;
        for j in 2..(x as u32) {
            f *= j as f64;
        }
        return Ok(f);
    }
    let t = x + LANCZOS_G;
    // t^(x+1/2) is split in two to delay overflow.
    let half = t.powf(0.5 * (x + 0.5));
    Ok(half * (half * (-t).exp()) * SQRT_2PI * lanczos_series(x) / x)
}

/// Rising factorial (x)_k by direct product.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma_real(1.0).unwrap(), 1.0);
        assert!(rel(gamma_real(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma_real(5.0).unwrap(), 24.0) < 1e-15);
    }

    #[test]
    fn gamma_half_integer_by_product_recurrence() {
        // Γ(7.5) = 6.5 · 5.5 · … · 0.5 · Γ(0.5)
        let product = (0..7).fold(PI.sqrt(), |acc, j| acc * (0.5 + j as f64));
        assert!(rel(product, 1871.254_305_797_788_3) < 1e-15);
        assert!(rel(gamma_real(7.5).unwrap(), product) < 1e-14);
    }

    #[test]
    fn gamma_recurrence_across_range() {
        for i in 0..160 {
            let x = -9.7 + 0.37 * i as f64;
            if (x - x.round()).abs() < 1e-3 {
                continue;
            }
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            assert!(rel(lhs, rhs) < 5e-14, "x = {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn gamma_reflection_values() {
        // Γ(1/4) Γ(3/4) = π√2
        let p = gamma_real(0.25).unwrap() * gamma_real(0.75).unwrap();
        assert!(rel(p, PI * 2f64.sqrt()) < 1e-15);
        assert!(rel(gamma_real(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-15);
    }

    #[test]
    fn gamma_poles_are_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert_eq!(gamma_real(x), Err(Error::GammaPole(x)));
        }
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let v = pochhammer(0.25, 6);
        let g = gamma_real(6.25).unwrap() / gamma_real(0.25).unwrap();
        assert!(rel(v, g) < 1e-14);
        assert_eq!(pochhammer(0.0, 3), 0.0);
        assert_eq!(pochhammer(3.0, 0), 1.0);
    }
}
