use num_complex::Complex64;
use ps_lab::local_arith::{
    arithmetic_functions, gauss_bound_scan, gauss_power_sum, gauss_power_sum_crt, gauss_sums_all, modulus_k,
    s_m_of_q, singular_series, tail_estimate, von_mangoldt, SingularSeriesTable,
};
use ps_lab::primes::{gcd, pow_mod, primes_up_to};
use ps_lab::expsums::divisors;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Local density at `p` from solution counts: `p^j #{units x: sum x_i^k = m mod p^j} / phi(p^j)^s`.
fn local_density(m: u64, s: u32, k: u32, p: u64, j: u32) -> f64 {
    let q = p.pow(j);
    let phi = (q - q / p) as f64;
    let mut hist = vec![0f64; q as usize];
    for x in 1..q {
        if x % p != 0 {
            hist[pow_mod(x, k as u64, q) as usize] += 1.0;
        }
    }
    let mut dist = vec![0f64; q as usize];
    dist[0] = 1.0;
    for _ in 0..s {
        let mut next = vec![0f64; q as usize];
        for (r, &d) in dist.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            for (v, &h) in hist.iter().enumerate() {
                if h != 0.0 {
                    next[(r + v) % q as usize] += d * h / phi;
                }
            }
        }
        dist = next;
    }
    q as f64 * dist[(m % q) as usize]
}

fn euler_product(m: u64, s: u32, k: u32, p_max: u64) -> f64 {
    primes_up_to(p_max)
        .into_iter()
        .map(|p| {
            // past p^gamma the terms S_m(p^j) vanish
            let j = if k as u64 % p == 0 { 2 } else { 1 };
            local_density(m, s, k, p, j)
        })
        .product()
}

#[test]
fn k_modulus_small_cases() {
    assert_eq!(modulus_k(1).unwrap(), 2);
    assert_eq!(modulus_k(2).unwrap(), 24);
    assert_eq!(modulus_k(3).unwrap(), 2);
}

#[test]
fn crt_multiplicativity_random_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 300 {
        let q1 = rng.gen_range(2..60u64);
        let q2 = rng.gen_range(2..60u64);
        if gcd(q1, q2) != 1 {
            continue;
        }
        let k = rng.gen_range(2..6u32);
        let a = rng.gen_range(1..(q1 * q2)) as i64;
        if gcd(a as u64, q1 * q2) != 1 {
            continue;
        }
        let direct = gauss_power_sum(a, q1 * q2, k).unwrap();
        let composed = gauss_power_sum_crt(a, q1, q2, k).unwrap();
        assert!((direct - composed).norm() < 1e-8, "a={a} q1={q1} q2={q2} k={k}");
        checked += 1;
    }
}

#[test]
fn gauss_sums_bounded_by_phi() {
    for q in 1..200u64 {
        let phi = arithmetic_functions(q).unwrap().phi as f64;
        for k in [2u32, 3, 4] {
            for v in gauss_sums_all(q, k).unwrap() {
                assert!(v.norm() <= phi + 1e-9);
            }
        }
    }
}

#[test]
fn weil_type_ratio_is_modest() {
    let scan = gauss_bound_scan(3, 2000, 0.6, 4).unwrap();
    assert!(scan.max_ratio.is_finite() && scan.max_ratio < 10.0, "{scan:?}");
    let s = gauss_power_sum(scan.argmax_a as i64, scan.argmax_q, 3).unwrap();
    assert!((s.norm() / (scan.argmax_q as f64).powf(0.6) - scan.max_ratio).abs() < 1e-9);
}

#[test]
fn s_m_is_real_and_periodic() {
    for q in 1..120u64 {
        for m in [0i64, 1, 9, 100] {
            let z: Complex64 = ps_lab::local_arith::s_m_of_q_complex(m, q, 9, 3).unwrap();
            assert!(z.im.abs() < 1e-9 * q as f64);
            let shifted = s_m_of_q(m + 3 * q as i64, q, 9, 3).unwrap();
            assert!((shifted - z.re).abs() < 1e-12);
        }
    }
}

#[test]
fn singular_series_matches_local_densities() {
    let table = SingularSeriesTable::new(9, 3, 2000, 4).unwrap();
    for m in [50_001u64, 50_013, 77_777, 99_999, 10_001] {
        let series = table.partial_sum(m as i64);
        let product = euler_product(m, 9, 3, 300);
        assert!((series - product).abs() < 2e-3, "m={m}: {series} vs {product}");
        assert!(series > 0.0);
    }
}

#[test]
fn singular_series_positive_on_admissible_class() {
    let table = SingularSeriesTable::new(9, 3, 2000, 4).unwrap();
    let min = (1..=10_000i64)
        .filter(|m| m % 2 == 1)
        .map(|m| table.partial_sum(m))
        .fold(f64::INFINITY, f64::min);
    assert!(min > 0.0, "{min}");
}

#[test]
fn tail_estimate_shrinks() {
    let r = singular_series(9, 9, 3, 50).unwrap();
    assert_eq!(r.terms.len(), 50);
    assert!((r.partial_sum - r.terms.iter().map(|t| t.1).sum::<f64>()).abs() < 1e-12);
    assert!(tail_estimate(9, 200) < tail_estimate(9, 50));
    assert!(r.tail_bound_estimate > 0.0);
}

#[test]
fn chebyshev_identity() {
    for n in 1..=10_000u64 {
        let total: f64 = divisors(n).into_iter().map(von_mangoldt).sum();
        let ln = (n as f64).ln();
        assert!((total - ln).abs() <= 1e-12 * ln.max(1.0), "n={n}");
    }
}
