use mxsum::coefficients::a_coefficients;
use mxsum::evaluators::*;
use mxsum::kernel::{integrate, rel_diff, QuadratureSpec};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn real(sign: Sign, mu: f64, lambda: f64, a: f64) -> SeriesParams {
    SeriesParams::real(sign, mu, lambda, a).unwrap()
}

fn closure_grid() -> impl Iterator<Item = (f64, f64, f64)> {
    [0.25, 0.5, 0.75].into_iter().flat_map(|mu| {
        [0.5, 1.0, 2.0].into_iter().flat_map(move |lambda| [2.0, 3.0, 6.0].into_iter().map(move |a| (mu, lambda, a)))
    })
}

#[test]
fn full_minus_closes_against_oracle() {
    for (mu, lambda, a) in closure_grid() {
        let p = real(Sign::Minus, mu, lambda, a);
        let s = direct_sum(&p, 1e-16).unwrap().value;
        let f = full_minus(&p).unwrap().value;
        assert!(rel_diff(f, s) <= 1e-10, "μ={mu} λ={lambda} a={a}: {f} vs {s}");
    }
}

#[test]
fn full_plus_closes_against_oracle() {
    for (mu, lambda, a) in closure_grid() {
        let p = real(Sign::Plus, mu, lambda, a);
        let s = direct_sum(&p, 1e-16).unwrap().value;
        let f = full_plus(&p).unwrap().value;
        assert!(rel_diff(f, s) <= 1e-10, "μ={mu} λ={lambda} a={a}: {f} vs {s}");
    }
}

#[test]
fn full_representations_hold_for_complex_a() {
    for sign in [Sign::Minus, Sign::Plus] {
        for (r, phi) in [(3.0, 0.3), (6.0, 1.0), (2.5, -0.8), (3.0, 1.3), (4.0, -1.35)] {
            let p = SeriesParams::new(sign, 0.4, 1.0, Complex64::from_polar(r, phi)).unwrap();
            let s = direct_sum(&p, 1e-16).unwrap().value;
            let f = match sign {
                Sign::Minus => full_minus(&p),
                Sign::Plus => full_plus(&p),
            }
            .unwrap()
            .value;
            assert!(rel_diff(f, s) <= 1e-10, "{sign} a={r}e^{{i{phi}}}: {f} vs {s}");
        }
    }
}

#[test]
fn tail_closes_the_exact_representation() {
    let p = real(Sign::Minus, 0.25, 1.0, 6.0);
    let s = direct_sum(&p, 1e-16).unwrap().value;
    let h = h_minus_quadrature(&p, 1e-15).unwrap().value;
    let expected = s - 0.5 * 6f64.powf(-0.5) - h;
    let (t, _) = bessel_tail_minus(&p, 64).unwrap();
    assert!((t.value - expected).norm() <= 1e-12 * s.norm());

    let p = real(Sign::Plus, 0.25, 1.0, 10.0);
    let s = direct_sum(&p, 1e-16).unwrap().value;
    let rest = 0.5 * 10f64.powf(-0.5)
        + j_mu_quadrature(&p, 1e-15).unwrap().value
        + h_plus_quadrature(&p, 1e-15).unwrap().value;
    let (t, _) = bessel_tail_plus(&p, 64).unwrap();
    assert!((rest + t.value - s).norm() <= 1e-12 * s.norm());
}

#[test]
fn lambda_zero_reductions() {
    // full_minus with λ = 0 is Olver's formula.
    let p = real(Sign::Minus, 0.75, 0.0, 5.0);
    let f = full_minus(&p).unwrap().value;
    let o = olver_lambda0_minus(0.75, Complex64::new(5.0, 0.0), 64).unwrap().value;
    assert!(rel_diff(f, o) < 1e-14);

    let p = real(Sign::Minus, 0.5, 0.0, 5.0);
    let s = direct_sum(&p, 1e-15).unwrap().value;
    assert!(rel_diff(olver_lambda0_minus(0.5, p.a, 64).unwrap().value, s) < 1e-12);

    let p = real(Sign::Plus, 0.75, 0.0, 3.0);
    let s = direct_sum(&p, 1e-15).unwrap().value;
    assert!(rel_diff(lambda0_plus(0.75, p.a, 64).unwrap().value, s) < 1e-10);

    // The plus tail at λ = 0 is the tail of the λ = 0 plus formula.
    let p = real(Sign::Plus, 0.75, 0.0, 4.0);
    let (t, terms) = bessel_tail_plus(&p, 64).unwrap();
    assert!(terms.iter().all(|t| t.theta.abs() < 1e-15));
    let l0 = lambda0_plus(0.75, p.a, 64).unwrap().value;
    let algebraic = 0.5 * 4f64.powf(-1.5) + jmu_lambda0(0.75, 4.0);
    assert!(rel_diff(algebraic + t.value, l0) < 1e-14);
}

/// √π Γ(μ−½)/(2a^{2μ−1}Γ(μ)) by direct quadrature of ∫₀^∞ (t²+a²)^{−μ} dt
/// with t = a·tan θ: a^{1−2μ} ∫₀^{π/2} cos^{2μ−2} θ dθ.
fn jmu_lambda0(mu: f64, a: f64) -> f64 {
    let spec = QuadratureSpec::finite(0.0, PI / 2.0).with_singularity(2.0 - 2.0 * mu).with_tol(1e-15);
    // cos θ = sin(π/2 − θ), written in the distance s to π/2
    let r = integrate(|s| Complex64::new(s.sin().powf(2.0 * mu - 2.0), 0.0), &spec).unwrap();
    a.powf(1.0 - 2.0 * mu) * r.value.re
}

#[test]
fn h_plus_matches_termwise_series() {
    let (mu, lambda, a) = (0.25, 1.0, 0.6);
    let p = real(Sign::Plus, mu, lambda, a);
    let q = h_plus_quadrature(&p, 1e-15).unwrap().value.re;
    let table = a_coefficients(lambda, 40).unwrap();
    let mut sum = 0.0;
    for k in 0..=40 {
        let spec = QuadratureSpec::finite(0.0, 1.0).with_singularity(mu).with_tol(1e-15);
        let moment = integrate(
            |s| {
                let u = 1.0 - s;
                Complex64::new((-PI * a * u).exp() * u.powi(2 * k as i32) * (s * (2.0 - s)).powf(-mu), 0.0)
            },
            &spec,
        )
        .unwrap()
        .value
        .re;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * table.values[k] * a.powi(2 * k as i32) * moment;
    }
    let series = a.powf(1.0 - 2.0 * mu) * lambda / PI * sum;
    assert!((series / q - 1.0).abs() < 1e-10, "{series} vs {q}");
}

#[test]
fn mu_step_check_is_second_order() {
    let d = mu_step_check(&real(Sign::Minus, 0.5, 1.0, 4.0), 1e-4).unwrap();
    assert!(d <= 1e-7, "{d}");
    let d = mu_step_check(&real(Sign::Minus, 0.25, 2.0, 6.0), 1e-4).unwrap();
    assert!(d <= 1e-7, "{d}");
    let coarse = mu_step_check(&real(Sign::Minus, 0.5, 1.0, 4.0), 1e-2).unwrap();
    let fine = mu_step_check(&real(Sign::Minus, 0.5, 1.0, 4.0), 5e-3).unwrap();
    let ratio = coarse / fine;
    assert!((3.5..4.5).contains(&ratio), "{ratio}");
}

#[test]
fn algebraic_error_decays_with_a() {
    for k in 1..=8 {
        let errors: Vec<f64> = [6.0, 8.0, 10.0]
            .into_iter()
            .map(|a| {
                let p = real(Sign::Minus, 0.5, 1.0, a);
                rel_diff(algebraic_minus(&p, k).unwrap().value, direct_sum(&p, 1e-16).unwrap().value)
            })
            .collect();
        assert!(errors[0] > errors[1] && errors[1] > errors[2], "k={k}: {errors:?}");
    }
}

#[test]
fn routes_reject_out_of_domain_input() {
    assert!(full_plus(&real(Sign::Plus, 0.0, 1.0, 3.0)).is_err());
    assert!(full_minus(&real(Sign::Minus, 1.5, 1.0, 3.0)).is_err());
    assert!(algebraic_minus(&real(Sign::Minus, 0.5, 0.0, 3.0), 4).is_err());
    assert!(SeriesParams::new(Sign::Minus, 0.5, 1.0, Complex64::new(0.0, 2.0)).is_err());
    assert!(lambda0_plus(0.4, Complex64::new(1.0, 0.0), 8).is_err());
}

#[test]
fn evaluate_dispatches_by_route() {
    let p = real(Sign::Minus, 0.5, 1.0, 6.0);
    let opts = RouteOptions { k: 8, tol: 1e-15, tail_terms: 64 };
    let oracle = evaluate(Route::Oracle, &p, &opts).unwrap().value;
    for route in [Route::Full, Route::Algebraic] {
        let v = evaluate(route, &p, &opts).unwrap().value;
        assert!(rel_diff(v, oracle) < 1e-8, "{route}");
    }
    let small = real(Sign::Minus, 0.5, 1.0, 0.7);
    let v = evaluate(Route::SmallA, &small, &RouteOptions { k: 60, ..opts }).unwrap().value;
    assert!(rel_diff(v, evaluate(Route::Oracle, &small, &opts).unwrap().value) < 1e-12);
    assert_eq!(Route::default_for(&p), Route::Full);
    assert_eq!(Route::default_for(&p.with_mu(0.0)), Route::Oracle);
    assert_eq!("integer-mu".parse::<Route>().unwrap(), Route::IntegerMu);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluators_respect_conjugation(r in 2.0f64..8.0, phi in -1.2f64..1.2, mu in 0.1f64..0.9, lambda in 0.3f64..2.0) {
        let a = Complex64::from_polar(r, phi);
        for sign in [Sign::Minus, Sign::Plus] {
            let p = SeriesParams::new(sign, mu, lambda, a).unwrap();
            let q = p.with_a(a.conj());
            let (v, w) = match sign {
                Sign::Minus => (full_minus(&p).unwrap().value, full_minus(&q).unwrap().value),
                Sign::Plus => (full_plus(&p).unwrap().value, full_plus(&q).unwrap().value),
            };
            prop_assert!((v - w.conj()).norm() <= 1e-12 * v.norm());
            let (v, w) = (direct_sum(&p, 1e-15).unwrap().value, direct_sum(&q, 1e-15).unwrap().value);
            prop_assert!((v - w.conj()).norm() <= 1e-13 * v.norm());
        }
    }

    #[test]
    fn real_a_gives_real_values(a in 1.5f64..12.0, mu in 0.05f64..0.95, lambda in 0.2f64..3.0) {
        for sign in [Sign::Minus, Sign::Plus] {
            let p = real(sign, mu, lambda, a);
            for v in [
                evaluate(Route::Full, &p, &RouteOptions::default()).unwrap().value,
                evaluate(Route::Algebraic, &p, &RouteOptions::default()).unwrap().value,
            ] {
                prop_assert!(v.im.abs() <= 1e-13 * v.norm());
            }
        }
    }
}
