//! One test per acceptance criterion. Each writes a single PASS/FAIL line to
//! the real standard output (bypassing the test harness capture) and then
//! asserts its verdict.

use mxsum::coefficients::{a_coefficients, b_coefficients, bhat_coefficients};
use mxsum::evaluators::*;
use mxsum::harness::*;
use mxsum::kernel::{alternating_accelerated_sum, hurwitz_zeta, integrate_real, rel_diff, QuadratureSpec};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

const RUNTIME_LIMIT: Duration = Duration::from_secs(10);

fn verdict(n: u32, title: &str, pass: bool, detail: impl AsRef<str>) {
    let line = format!(
        "acceptance {n:>2} {} {title}: {}\n",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(pass, "{}", line.trim_end());
}

fn failures(rows: &[ReportRow]) -> String {
    rows.iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} computed {:e} printed {:e}", r.row_id, r.computed, r.reference.unwrap_or(f64::NAN)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn square_table(n: u32, title: &str, run: fn() -> Vec<ReportRow>) {
    let start = Instant::now();
    let rows = run();
    let elapsed = start.elapsed();
    let errors = rows.iter().filter(|r| r.k.is_some()).collect::<Vec<_>>();
    let values = rows.iter().filter(|r| r.k.is_none()).collect::<Vec<_>>();
    let e_ok = errors.iter().filter(|r| r.pass).count();
    let v_ok = values.iter().filter(|r| r.pass).count();
    let pass = errors.len() == 18 && values.len() == 3 && e_ok == 18 && v_ok == 3 && elapsed < RUNTIME_LIMIT;
    let mut detail = format!(
        "{e_ok}/{} error cells within 2%, {v_ok}/{} values within 1e-5, {:.2} s",
        errors.len(),
        values.len(),
        elapsed.as_secs_f64()
    );
    if !pass {
        detail.push_str(&format!(" [{}]", failures(&rows)));
    }
    verdict(n, title, pass, detail);
}

#[test]
fn criterion_01_table1() {
    square_table(1, "table 1 reproduction", reproduce_table1);
}

#[test]
fn criterion_02_table3() {
    square_table(2, "table 3 reproduction", reproduce_table3);
}

#[test]
fn criterion_03_table2() {
    let r = resolve_table2();
    let real_axis_ok = Convention::ALL.iter().all(|c| {
        let prefix = format!("{c}/phi=0.00/");
        let row: Vec<_> = r.rows.iter().filter(|x| x.row_id.starts_with(&prefix)).collect();
        row.len() == 3 && row.iter().all(|x| x.pass && x.tolerance_used == 0.02)
    });
    let full: Vec<Convention> = Convention::ALL
        .into_iter()
        .filter(|c| {
            let prefix = format!("{c}/");
            let cells: Vec<_> = r.rows.iter().filter(|x| x.row_id.starts_with(&prefix)).collect();
            cells.len() == 15 && cells.iter().all(|x| x.pass)
        })
        .collect();
    let recorded = r
        .rows
        .iter()
        .any(|x| x.row_id == format!("convention={}", Convention::PiPhi) && x.pass);
    let pass = real_axis_ok && full.len() == 1 && r.matching == full.first().copied() && recorded;
    verdict(
        3,
        "table 2 reproduction",
        pass,
        format!("phi=0 row under both readings: {real_axis_ok}; fully matching readings: {full:?}; recorded {:?}", r.matching),
    );
}

#[test]
fn criterion_04_tail_agreement() {
    let t = tail_agreement_check(3.0).unwrap();
    let (remainder, tail) = t.digits();
    let digits = format!("{:.12e}", t.tail.abs());
    let pass = t.rel_difference <= 1e-11
        && digits.starts_with("6.35783824695")
        && t.tail < 0.0
        && t.remainder < 0.0
        && t.exponent == -5;
    verdict(
        4,
        "tail agreement at a = 3",
        pass,
        format!("remainder {remainder}, tail {tail}, relative difference {:.1e}, exponent {}", t.rel_difference, t.exponent),
    );
}

#[test]
fn criterion_05_closure() {
    let mut worst: (f64, String) = (0.0, String::new());
    for mu in [0.25, 0.5, 0.75] {
        for lambda in [0.5, 1.0, 2.0] {
            for a in [2.0, 3.0, 6.0] {
                for sign in [Sign::Minus, Sign::Plus] {
                    let p = SeriesParams::real(sign, mu, lambda, a).unwrap();
                    let truth = direct_sum(&p, 1e-16).unwrap().value;
                    let full = match sign {
                        Sign::Minus => full_minus(&p),
                        Sign::Plus => full_plus(&p),
                    }
                    .unwrap()
                    .value;
                    let d = rel_diff(full, truth);
                    if d > worst.0 {
                        worst = (d, format!("{sign} μ={mu} λ={lambda} a={a}"));
                    }
                }
            }
        }
    }
    verdict(
        5,
        "exact-representation closure",
        worst.0 <= 1e-10,
        format!("54 points, worst {:.1e} at {}", worst.0, worst.1),
    );
}

#[test]
fn criterion_06_lambda_zero() {
    let one = Complex64::new(1.0, 0.0);
    let olver = olver_lambda0_minus(1.0, one, 64).unwrap().value.re;
    let olver_exact = 0.5 * (1.0 + PI / PI.sinh());
    let plus = lambda0_plus(1.0, one, 64).unwrap().value.re;
    let plus_exact = 0.5 * (1.0 + PI / PI.tanh());
    let d1 = (olver - olver_exact).abs() / olver_exact;
    let d2 = (plus - plus_exact).abs() / plus_exact;

    let a = Complex64::new(5.0, 0.0);
    let sign = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let accelerated =
        alternating_accelerated_sum(|n| sign(n) * ((n * n) as f64 + 25.0).powf(-0.75), 1e-15).unwrap().value.re;
    let minus = olver_lambda0_minus(0.75, a, 64).unwrap().value.re;
    let p = SeriesParams::new(Sign::Plus, 0.75, 0.0, a).unwrap();
    let direct = direct_sum(&p, 1e-15).unwrap().value.re;
    let plus34 = lambda0_plus(0.75, a, 64).unwrap().value.re;
    let d3 = (minus - accelerated).abs() / accelerated.abs();
    let d4 = (plus34 - direct).abs() / direct.abs();
    let pass = d1 <= 1e-12 && d2 <= 1e-12 && d3 <= 1e-10 && d4 <= 1e-10;
    verdict(
        6,
        "λ = 0 reductions",
        pass,
        format!("μ=1 a=1: {d1:.1e}, {d2:.1e}; μ=¾ a=5 vs oracles: {d3:.1e}, {d4:.1e}"),
    );
}

fn b_quadrature(lambda: f64, k: usize) -> f64 {
    let f = |t: f64| {
        if t == 0.0 {
            if k == 0 {
                lambda / PI
            } else {
                0.0
            }
        } else {
            t.powi(2 * k as i32) * (lambda * t).sin() / (PI * t).sinh()
        }
    };
    integrate_real(f, &QuadratureSpec::semi_infinite(0.0).with_tol(1e-14)).unwrap().value.re
}

/// The n = 0 pole of the sum over (x + inπ)^{−2k−1} is excluded, so k = 0
/// would need ζ(1, ·); that index is compared with ½(coth x − 1/x) instead.
fn bhat_oracle(lambda: f64, k: usize) -> f64 {
    if k == 0 {
        let x = 0.5 * lambda;
        return 0.5 * (1.0 / x.tanh() - 1.0 / x);
    }
    let s = (2 * k + 1) as f64;
    let shift = Complex64::new(0.0, lambda / (2.0 * PI));
    let one = Complex64::new(1.0, 0.0);
    let diff = hurwitz_zeta(s, one - shift).unwrap() - hurwitz_zeta(s, one + shift).unwrap();
    let factorial: f64 = (1..=2 * k).map(|j| j as f64).product();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    (Complex64::new(0.0, sign * factorial / (2.0 * PI).powf(s)) * diff).re
}

#[test]
fn criterion_07_coefficients() {
    let mut worst_b: f64 = 0.0;
    let mut worst_bhat: f64 = 0.0;
    for lambda in [0.2, 1.0, 3.0] {
        let b = b_coefficients(lambda, 6).unwrap();
        let bh = bhat_coefficients(lambda, 6).unwrap();
        for k in 0..=6 {
            let q = b_quadrature(lambda, k);
            worst_b = worst_b.max((b.values[k] - q).abs() / q.abs());
            let z = bhat_oracle(lambda, k);
            worst_bhat = worst_bhat.max((bh.values[k] - z).abs() / z.abs());
        }
    }
    let x: f64 = 0.3;
    let a = a_coefficients(1.0, 20).unwrap();
    let series: f64 = a
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { 1.0 } else { -1.0 } * v * x.powi(2 * k as i32))
        .sum::<f64>()
        / PI;
    let direct = x.sin() / (PI * x).sinh();
    let worst_a = (series - direct).abs() / direct;
    let pass = worst_b <= 1e-10 && worst_bhat <= 1e-10 && worst_a <= 1e-12;
    verdict(
        7,
        "coefficient oracles",
        pass,
        format!("B vs quadrature {worst_b:.1e}, B̂ vs zeta {worst_bhat:.1e}, A series at x=0.3 {worst_a:.1e}"),
    );
}

#[test]
fn criterion_08_decay_rate() {
    let minus = decay_rate_fit(Sign::Minus, 0.5, 1.0, &DECAY_GRID).unwrap();
    let plus = decay_rate_fit(Sign::Plus, 0.25, 1.0, &DECAY_GRID).unwrap();
    let dm = (minus / -PI - 1.0).abs();
    let dp = (plus / (-2.0 * PI) - 1.0).abs();
    verdict(
        8,
        "decay-rate property",
        dm <= 0.02 && dp <= 0.02,
        format!("minus slope {minus:.5} ({:.2}% off −π), plus slope {plus:.5} ({:.2}% off −2π)", 100.0 * dm, 100.0 * dp),
    );
}

#[test]
fn criterion_09_integer_mu() {
    let mut worst: (f64, String) = (0.0, String::new());
    for n in 1..=5usize {
        for a in [2.0, 3.0] {
            for sign in [Sign::Minus, Sign::Plus] {
                let p = SeriesParams::real(sign, n as f64, 1.0, a).unwrap();
                let closed = integer_mu_closed_form(n, &p).unwrap().value;
                let truth = direct_sum(&p, 1e-16).unwrap().value;
                let d = rel_diff(closed, truth);
                if d >= worst.0 {
                    worst = (d, format!("{sign} μ={n} a={a}"));
                }
            }
        }
    }
    verdict(
        9,
        "integer-μ closed forms",
        worst.0 <= 1e-12,
        format!("20 points, worst {:.1e} at {}", worst.0, worst.1),
    );
}

#[test]
fn criterion_10_mu_step() {
    let p = SeriesParams::real(Sign::Minus, 0.5, 1.0, 4.0).unwrap();
    let fine = mu_step_check(&p, 1e-4).unwrap();
    let finer = mu_step_check(&p, 5e-5).unwrap();
    let ratio = fine / finer;
    verdict(
        10,
        "μ-step recurrence",
        fine <= 1e-7 && (3.5..=4.5).contains(&ratio),
        format!("discrepancy {fine:.3e} at h=1e-4, {finer:.3e} at h=5e-5, ratio {ratio:.3}"),
    );
}
