use ps_lab::repcount::{
    compare_to_main_term, count_representations, count_representations_mitm, count_table, moment_count,
    permutation_solutions, quadrature_vs_count,
};
use ps_lab::ps_core::enumerate_ps_primes;
use ps_lab::PsParams;

fn brute_moment(t: u32, k: u32, x: u64) -> u128 {
    // all ordered t-tuple sums, then count equal pairs
    let mut sums = vec![0u64];
    for _ in 0..t {
        sums = sums.iter().flat_map(|&s| (1..=x).map(move |n| s + n.pow(k))).collect();
    }
    sums.sort_unstable();
    let mut total = 0u128;
    let mut i = 0;
    while i < sums.len() {
        let j = sums[i..].iter().take_while(|&&v| v == sums[i]).count();
        total += (j * j) as u128;
        i += j;
    }
    total
}

#[test]
fn small_examples() {
    let p = PsParams::new("1.5").unwrap();
    assert_eq!(count_representations(16, 2, 3, &p).unwrap(), 1);
    assert_eq!(count_representations(133, 2, 3, &p).unwrap(), 2);
    let primes = enumerate_ps_primes(50, &p).unwrap();
    for n in 1..=50u64.pow(3) {
        let want = u64::from(primes.iter().any(|&q| q.pow(3) == n));
        if want == 1 || n % 997 == 0 {
            assert_eq!(count_representations(n, 1, 3, &p).unwrap(), want);
        }
    }
}

#[test]
fn dp_agrees_with_meet_in_the_middle() {
    let p = PsParams::new("1.5").unwrap();
    for s in [2u32, 3, 4] {
        let table = count_table(3000, s, 3, &p).unwrap();
        for n in (1..=3000u64).step_by(7) {
            assert_eq!(table[n as usize], count_representations_mitm(n, s, 3, &p).unwrap(), "s={s} n={n}");
        }
    }
}

#[test]
fn counts_vanish_below_the_smallest_sum() {
    let p = PsParams::new("1.2").unwrap();
    let table = count_table(5000, 5, 3, &p).unwrap();
    assert!(table[..40].iter().all(|&c| c == 0));
    assert_eq!(table[40], 1);
}

#[test]
fn moment_counts_against_brute_force() {
    assert_eq!(moment_count(2, 3, 10).unwrap().count, 190);
    assert_eq!(moment_count(2, 3, 12).unwrap().count, brute_moment(2, 3, 12));
    // ordered count for X = 12, including the 1729 taxicab pairs
    assert_eq!(moment_count(2, 3, 12).unwrap().count, 284);
    for x in [1u64, 5, 9] {
        assert_eq!(moment_count(1, 3, x).unwrap().count, x as u128);
        assert_eq!(moment_count(3, 2, x).unwrap().count, brute_moment(3, 2, x));
    }
}

#[test]
fn moment_counts_monotone_and_above_permutations() {
    let mut prev = 0;
    for x in 1..=30u64 {
        let c = moment_count(3, 3, x).unwrap().count;
        assert!(c >= prev);
        assert!(c >= permutation_solutions(3, x));
        prev = c;
    }
    assert_eq!(permutation_solutions(2, 10), 190);
}

#[test]
fn moment_growth_exponent() {
    for x in [50u64, 100, 150, 200] {
        let c = moment_count(4, 3, x).unwrap().count as f64;
        assert!(c.ln() / (x as f64).ln() < 2.0 * 4.0 - 3.0 + 0.5);
    }
}

#[test]
fn quadrature_examples() {
    let q = quadrature_vs_count(1, 3, 5, 300, 1).unwrap();
    assert!(q.relative_error < 1e-9 && !q.grid_too_small);
    let q = quadrature_vs_count(2, 3, 10, 20_001, 2).unwrap();
    assert!(q.relative_error < 1e-6);
    let rough = quadrature_vs_count(2, 3, 10, 50, 1).unwrap();
    assert!(rough.grid_too_small);
}

#[test]
fn comparison_table_shape() {
    let p = PsParams::new("1.01").unwrap();
    let t = compare_to_main_term((2000, 4000), 9, 3, &p, 2000, 2).unwrap();
    assert_eq!(t.rows.len(), 2000);
    assert_eq!(t.modulus, 2);
    assert!(t.admissible_rows > 0);
    assert!((0.0..=1.0).contains(&t.concentration));
    assert!(t.mean_ratio.is_finite() && t.mean_ratio > 0.0);
}
