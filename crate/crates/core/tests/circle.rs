use num_complex::Complex64;
use ps_lab::circle_method::{
    build_major_arcs, c_range, gamma, j_vs_i_check, li, main_term, main_term_with_series, nu_of_k,
    osc_integral_i, osc_integral_j, two_t_table, v_approx, ArcParams, MainTermParams,
};
use ps_lab::expsums::{ps_prime_sum, Frac128};
use ps_lab::local_arith::euler_phi;
use ps_lab::PsParams;
use rug::Rational;
use std::f64::consts::PI;

fn z_grid() -> Vec<f64> {
    (-6..=3).flat_map(|e| [10f64.powi(e), -10f64.powi(e)]).collect()
}

#[test]
fn i_bound_on_grid() {
    let mut fitted: f64 = 0.0;
    for (k, delta) in [(3u32, 1.0 / 1.05), (4, 1.0 / 1.1)] {
        let a = delta / k as f64;
        for e in 3..=9 {
            let n = 10u64.pow(e);
            let top = (n as f64).powf(a);
            let i0 = osc_integral_i(0.0, n, k, delta).unwrap().value;
            assert!((i0.re / top - 1.0).abs() < 1e-9 && i0.im == 0.0);
            for z in z_grid() {
                let v = osc_integral_i(z, n, k, delta).unwrap().value.norm();
                let c = v / top.min(z.abs().powf(-a));
                fitted = fitted.max(c);
            }
        }
    }
    assert!(fitted <= 2.0, "{fitted}");
}

#[test]
fn i_matches_closed_form_at_unit_exponent() {
    for z in [0.37, -2.5, 1e-3, 17.25] {
        let n = 1000u64;
        let got = osc_integral_i(z, n, 1, 1.0).unwrap().value;
        let w = 2.0 * PI * z;
        let want = (Complex64::from_polar(1.0, w * n as f64) - 1.0) / Complex64::new(0.0, w);
        assert!((got - want).norm() < 1e-8 * n as f64, "z={z}");
    }
}

#[test]
fn j_at_zero() {
    for n in [100u64, 10_000, 1_000_000] {
        let j = osc_integral_j(0.0, n, 1, 1.0).unwrap().value;
        let want = li(n as f64) - li(2.0);
        assert!((j.re / want - 1.0).abs() < 1e-9 && j.im.abs() < 1e-12);
    }
    for (k, delta) in [(3u32, 1.0 / 1.05), (4, 1.0 / 1.1)] {
        for e in 3..=9 {
            let n = 10u64.pow(e);
            if (n as f64).powf(1.0 / k as f64) <= 2.0 {
                continue;
            }
            let j = osc_integral_j(0.0, n, k, delta).unwrap().value.re;
            let i = osc_integral_i(0.0, n, k, delta).unwrap().value.re;
            assert!(j < i);
        }
    }
}

#[test]
fn j_tracks_i_over_log() {
    let (n, k, delta) = (1_000_000_000u64, 3u32, 1.0 / 1.05);
    let xk = n as f64;
    for beta in [0.0, 1.0 / xk, 10.0 / xk] {
        let r = j_vs_i_check(beta, n, k, delta, 1.0).unwrap();
        assert!(r.difference <= r.rhs, "{r:?}");
    }
}

#[test]
fn v_approx_examples() {
    let (n, k, delta) = (1_000_000u64, 3u32, 1.0 / 1.05);
    let v = v_approx(1e-9, 1, 1, n, k, delta, 1.0).unwrap();
    let j = osc_integral_j(v.beta, n, k, delta).unwrap().value;
    assert!((v.value - j).norm() < 1e-12);
    let v = v_approx(1.0 / 3.0, 1, 3, n, k, delta, 1.0).unwrap();
    assert!(v.value.im.abs() < 1e-9 * v.value.norm().max(1.0));
    assert!(v_approx(0.25, 1, 3, n, k, delta, 1.0).is_err());
}

#[test]
fn v_approx_tracks_ps_prime_sum() {
    let p = PsParams::new("1.05").unwrap();
    let delta = p.delta_f64();
    let k = 1;
    let gaps: Vec<f64> = (10..=18)
        .step_by(2)
        .map(|e| {
            let x = 1u64 << e;
            let s = ps_prime_sum(Frac128::ZERO, k, x, &p).unwrap();
            let v = v_approx(0.0, 1, 1, x, k, delta, 1.0).unwrap().value;
            (s - v).norm() / (x as f64).powf(delta)
        })
        .collect();
    assert!(gaps.last().unwrap() < gaps.first().unwrap(), "{gaps:?}");
}

#[test]
fn arcs_on_full_grid() {
    for x in [100u64, 1000] {
        for k in [3u32, 4] {
            for kappa in [0.5, 1.0, 2.0] {
                let s = build_major_arcs(ArcParams { x, k, kappa }).unwrap();
                assert_eq!(s.arcs.len() as u64, s.expected_count());
                let lk = (x as f64).ln().powf(kappa);
                let want: u64 = (1..=lk.floor() as u64).map(euler_phi).sum();
                assert_eq!(s.arcs.len() as u64, want);
                let xk = (x as f64).powi(k as i32);
                assert!(s.total_measure < lk.powi(3) / xk);
                assert!((s.total_measure + s.minor_measure - 1.0).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn main_term_smooth_part_increases() {
    let (s, k, c) = (9u32, 3u32, 1.01);
    let start = ((s * k) as f64).exp();
    let mut prev = 0.0;
    for i in 0..12 {
        let n = (start * 2f64.powi(i)) as u64;
        let m = main_term_with_series(&MainTermParams { n, s, k, c }, 1.0).unwrap();
        assert!(m.value > prev);
        prev = m.value;
    }
}

#[test]
fn main_term_positive_near_identity() {
    let m = main_term(&MainTermParams { n: 100_001, s: 9, k: 3, c: 1.001 }, 2000).unwrap();
    assert!(m.value > 0.0 && m.singular_series > 0.0);
    // nine odd primes never sum to an even number
    let even = main_term(&MainTermParams { n: 100_000, s: 9, k: 3, c: 1.001 }, 2000).unwrap();
    // only the truncation residue survives
    assert!(even.singular_series.abs() < 1e-2 * m.singular_series.max(0.1), "{even:?}");
}

#[test]
fn c_range_matches_float_evaluation() {
    for (k, s, t) in [(3u32, 9u32, 4u32), (3, 20, 7), (4, 17, 8), (5, 40, 12), (12, 300, 71)] {
        let r = c_range(k, s, t).unwrap();
        let (sf, tf) = (s as f64, t as f64);
        let want = if k == 3 {
            1.0 + (sf - 2.0 * tf) * 3.0 * (1.0 / (77.0 * sf + 158.0 * tf)).min(1.0 / (75.0 * sf + 164.0 * tf))
        } else {
            let nu = nu_of_k(k).unwrap() as f64;
            1.0 + (sf - 2.0 * tf) / ((nu - 1.0) * sf + 2.0 * tf * nu)
        };
        assert!((r.c_max_decimal - want).abs() < 1e-12);
        assert!(r.c_max_exact > 1);
    }
    assert_eq!(c_range(3, 9, 4).unwrap().c_max_exact, Rational::from((1334, 1331)));
    assert!(c_range(4, 9, 1).unwrap().c_max_exact > 1);
}

#[test]
fn two_t_beyond_table() {
    let k = 20i64;
    let mut best = i64::MIN;
    for s in 1..=k {
        let num = s * (k - s - 1);
        let den = k - s + 1;
        let mut ceil = num / den;
        if ceil * den < num {
            ceil += 1;
        }
        best = best.max(ceil);
    }
    let mut v = k * k + 1 - best;
    if v % 2 == 1 {
        v += 1;
    }
    assert_eq!(two_t_table(20).unwrap() as i64, v);
    assert_eq!(two_t_table(3).unwrap(), 8);
    assert_eq!(two_t_table(12).unwrap(), 142);
}

#[test]
fn gamma_reflection() {
    for i in 1..200 {
        let x = i as f64 / 200.0;
        let lhs = gamma(x) * gamma(1.0 - x);
        let rhs = PI / (PI * x).sin();
        assert!((lhs / rhs - 1.0).abs() < 1e-10, "x={x}");
    }
}
