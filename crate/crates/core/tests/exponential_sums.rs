use num_complex::Complex64;
use ps_lab::expsums::{
    bound_experiment, build_vaaler, psi, ps_prime_sum, shifted_poly_sum, st_decomposition, vaaler_check,
    vaughan_decompose, weighted_prime_sum, weyl_sum, weyl_sum_partitioned, BoundGrid, BoundLemma, Coefficients,
    Frac128,
};
use ps_lab::local_arith::von_mangoldt;
use ps_lab::primes::primes_up_to;
use ps_lab::ps_core::enumerate_ps_primes;
use ps_lab::PsParams;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

const PREC: u32 = 256;

fn fr(x: f64) -> Frac128 {
    Frac128::from_f64(x).unwrap()
}

/// `e(theta)` evaluated at 256 bits.
fn cis_hp(theta: Float) -> (Float, Float) {
    let two_pi = Float::with_val(PREC, Constant::Pi) * 2u32;
    let x = theta * two_pi;
    (x.clone().cos(), x.sin())
}

#[test]
fn parseval_on_fine_grid() {
    let (k, x) = (2u32, 12u64);
    let m = 2 * x.pow(k) + 1;
    let mean: f64 = (0..m)
        .map(|j| weyl_sum(Frac128::from_rational(&Rational::from((j, m))), k, x).norm_sqr())
        .sum::<f64>()
        / m as f64;
    assert!((mean / x as f64 - 1.0).abs() < 1e-6, "{mean}");
}

#[test]
fn period_and_conjugation() {
    for &(num, den) in &[(1i64, 10i64), (3183, 10_000), (77, 100), (999, 1000)] {
        let a = Frac128::from_rational(&Rational::from((num, den)));
        let shifted = Frac128::from_rational(&Rational::from((num + den, den)));
        let negated = Frac128::from_rational(&Rational::from((-num, den)));
        for k in 1..=5u32 {
            let s = weyl_sum(a, k, 500);
            assert_eq!(s, weyl_sum(shifted, k, 500));
            let conj = weyl_sum(negated, k, 500);
            assert!((s.conj() - conj).norm() < 1e-9);
        }
    }
}

#[test]
fn partitioned_weyl_sum_is_close() {
    let a = fr(0.61803398875);
    let one = weyl_sum(a, 3, 100_000);
    for parts in [2, 3, 8] {
        assert!((weyl_sum_partitioned(a, 3, 100_000, parts) - one).norm() < 1e-8);
    }
}

#[test]
fn weyl_sum_quarter_matches_high_precision() {
    let got = weyl_sum(Frac128::from_rational(&Rational::from((1, 4))), 3, 8);
    let (mut re, mut im) = (Float::new(PREC), Float::new(PREC));
    for n in 1..=8u64 {
        let theta = Float::with_val(PREC, n.pow(3)) / 4u32;
        let (c, s) = cis_hp(theta);
        re += c;
        im += s;
    }
    assert!((got - Complex64::new(re.to_f64(), im.to_f64())).norm() < 1e-12);
}

#[test]
fn huge_powers_keep_phase() {
    // alpha = 1/3: n^k mod 3 decides the phase even when n^k is far past 2^53
    let alpha = Frac128::from_rational(&Rational::from((1, 3)));
    let n = 3_000_001u64;
    let got = weyl_sum(alpha, 3, n) - weyl_sum(alpha, 3, n - 1);
    let r = (n % 3) as f64;
    let want = Complex64::from_polar(1.0, std::f64::consts::TAU * r / 3.0);
    assert!((got - want).norm() < 1e-6);
}

#[test]
fn shifted_sum_matches_high_precision() {
    let got = shifted_poly_sum(&[], 1.0, 2.0 / 3.0, 100, 200);
    let (mut re, mut im) = (Float::new(PREC), Float::new(PREC));
    let third = Float::with_val(PREC, 2) / 3u32;
    for n in 101..=200u32 {
        let (c, s) = cis_hp(Float::with_val(PREC, n).pow(&third));
        re += c;
        im += s;
    }
    assert!((got - Complex64::new(re.to_f64(), im.to_f64())).norm() < 1e-10);
    assert!((shifted_poly_sum(&[], 0.0, 0.5, 100, 200) - Complex64::new(100.0, 0.0)).norm() < 1e-12);
}

#[test]
fn ps_prime_sum_examples() {
    let p = PsParams::new("1.5").unwrap();
    let a = fr(0.37);
    let got = ps_prime_sum(a, 3, 12, &p).unwrap();
    let want: Complex64 = [2u64, 5, 11].iter().map(|&q| fr(0.37).mul_int((q * q * q) as u128).cis()).sum();
    assert!((got - want).norm() < 1e-12);
    let zero = ps_prime_sum(Frac128::ZERO, 2, 5000, &p).unwrap();
    assert_eq!(zero.re, enumerate_ps_primes(5000, &p).unwrap().len() as f64);
}

#[test]
fn weighted_sum_at_unit_exponent() {
    let p = PsParams::new("1").err();
    assert!(p.is_some(), "c = 1 is outside the admissible range");
    let near = PsParams::from_rational(Rational::from(1) + Rational::from((1, 1u64 << 50))).unwrap();
    let a = fr(0.2);
    let t = weighted_prime_sum(a, 2, 2000, &near).unwrap();
    let plain: Complex64 = primes_up_to(2000).into_iter().map(|q| a.mul_int((q * q) as u128).cis()).sum();
    assert!((t - plain).norm() < 1e-9);
}

#[test]
fn st_residual_and_growth() {
    let p = PsParams::new("1.05").unwrap();
    let delta = p.delta_f64();
    let nu = 100.0;
    let exponent = (1.0 + delta) * (nu - 1.0) / (2.0 * nu - 1.0) + 0.05;
    for e in 10..=16 {
        let x = 1u64 << e;
        let st = st_decomposition(x, &p).unwrap();
        let xf = x as f64;
        assert!(st.residual.abs() <= 5.0 * xf.ln().ln(), "{st:?}");
        let diff = st.ps_prime_count as f64 - st.weighted_sum;
        assert!(diff.abs() < xf.powf(exponent));
    }
}

#[test]
fn vaughan_identity_all_small_n() {
    for n in 2..=10_000u64 {
        let root = (n as f64).sqrt();
        for uv in [2.0, 5.0, 10.0, root] {
            if n as f64 <= uv {
                continue;
            }
            let t = vaughan_decompose(n, uv, uv).unwrap();
            assert!((t.combination - von_mangoldt(n)).abs() < 1e-10, "n={n} uv={uv}");
        }
    }
    assert!(vaughan_decompose(5, 5.0, 5.0).is_err());
    let t = vaughan_decompose(101, 5.0, 5.0).unwrap();
    assert!((t.combination - 101f64.ln()).abs() < 1e-12);
}

#[test]
fn vaaler_envelope_and_coefficients() {
    for h in [8u32, 16, 32, 64] {
        let c = vaaler_check(h, 100_000).unwrap();
        assert_eq!(c.envelope_violations, 0, "{c:?}");
        assert!(c.max_h_times_a <= 1.0 / std::f64::consts::PI + 1e-12);
        assert!(c.max_big_h_times_b <= 0.5 + 1e-12);
    }
    let v = build_vaaler(16).unwrap();
    assert_eq!(psi(0.5), 0.0);
    assert!(v.psi_star(0.5).abs() <= v.envelope(0.5));
    for h in 1..=16i64 {
        assert_eq!(v.a(-h), v.a(h).conj());
    }
}

#[test]
fn bound_experiments_report_finite_ratios() {
    let mut grid = BoundGrid::new(3, 1.0 / 1.05);
    grid.ell = 4;
    for lemma in [BoundLemma::Shift, BoundLemma::Hb, BoundLemma::Corput, BoundLemma::TypeII] {
        let r = bound_experiment(lemma, &grid).unwrap();
        assert!(!r.points.is_empty());
        assert!(r.max_ratio.is_finite() && r.max_ratio > 0.0, "{lemma:?}");
        assert!((r.sigma - 1.0 / 12.0).abs() < 1e-15);
    }
    grid.coefficients = Coefficients::Random;
    let a = bound_experiment(BoundLemma::TypeII, &grid).unwrap();
    let b = bound_experiment(BoundLemma::TypeII, &grid).unwrap();
    assert_eq!(a.max_ratio, b.max_ratio);

    let mut small = BoundGrid::new(3, 1.0 / 1.05);
    small.ell = 4;
    small.d_values = vec![1e-3];
    let r = bound_experiment(BoundLemma::Shift, &small).unwrap();
    assert!(r.max_ratio <= 1.0, "{}", r.max_ratio);

    grid.n_values = vec![2_000_000];
    assert!(bound_experiment(BoundLemma::Shift, &grid).is_err());
}
