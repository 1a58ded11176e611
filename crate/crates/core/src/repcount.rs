//! Exact counts behind the circle-method quantities.
//!
//! - `R(N)`: ordered `s`-tuples of PS primes with `p_1^k + ... + p_s^k = N`,
//!   by dynamic programming over `N` (one layer per summand), with a
//!   meet-in-the-middle enumeration kept as an independent check.
//! - The `2t`-th Weyl moment as the number of solutions of
//!   `n_1^k + ... + n_t^k = n_{t+1}^k + ... + n_{2t}^k`, `n_i <= X`, and its
//!   evaluation as a grid mean of `|W(j/M)|^{2t}`.

use std::collections::{BTreeMap, HashMap};

use rug::Rational;
use serde::Serialize;

use crate::circle_method::{integer_root, main_term_with_series, MainTermParams};
use crate::error::{Error, Result};
use crate::expsums::{weyl_sum_partitioned, Frac128};
use crate::local_arith::{modulus_k, SingularSeriesTable};
use crate::partition;
use crate::ps_core::{enumerate_ps_primes, PsParams};

/// Largest `N` the representation DP accepts.
pub const MAX_REP_N: u64 = 10_000_000;
/// Largest number of summands the representation DP accepts.
pub const MAX_REP_S: u32 = 12;
/// Largest `t X^k` (entries of the dense moment histogram).
pub const MAX_MOMENT_RANGE: u64 = 64_000_000;

fn check_rep_budget(n: u64, s: u32, k: u32) -> Result<()> {
    if s == 0 || k == 0 {
        return Err(Error::InvalidParameter("s and k must be >= 1".into()));
    }
    if n > MAX_REP_N || s > MAX_REP_S {
        return Err(Error::BudgetExceeded(format!(
            "representation counts are limited to N <= {MAX_REP_N}, s <= {MAX_REP_S}"
        )));
    }
    Ok(())
}

/// `p^k` for the PS primes with `p^k <= n_max`.
pub fn ps_prime_powers(n_max: u64, k: u32, params: &PsParams) -> Result<Vec<u64>> {
    let x = integer_root(n_max, k);
    if x < 2 {
        return Ok(Vec::new());
    }
    Ok(enumerate_ps_primes(x, params)?
        .into_iter()
        .map(|p| p.pow(k))
        .collect())
}

/// `R(N)` for every `N <= n_max`.
pub fn count_table(n_max: u64, s: u32, k: u32, params: &PsParams) -> Result<Vec<u64>> {
    check_rep_budget(n_max, s, k)?;
    let powers = ps_prime_powers(n_max, k, params)?;
    let len = n_max as usize + 1;
    let mut layer = vec![0u64; len];
    layer[0] = 1;
    for _ in 0..s {
        let mut next = vec![0u64; len];
        for (n, slot) in next.iter_mut().enumerate() {
            let mut acc = 0u64;
            for &pk in &powers {
                let pk = pk as usize;
                if pk > n {
                    break;
                }
                acc = acc
                    .checked_add(layer[n - pk])
                    .ok_or_else(|| Error::Overflow(format!("R({n}) exceeds 64 bits")))?;
            }
            *slot = acc;
        }
        layer = next;
    }
    Ok(layer)
}

pub fn count_representations(n: u64, s: u32, k: u32, params: &PsParams) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    Ok(count_table(n, s, k, params)?[n as usize])
}

fn tuple_sums(powers: &[u64], len: u32, cap: u64, out: &mut Vec<u64>) {
    fn go(powers: &[u64], left: u32, acc: u64, cap: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for &p in powers {
            let v = acc + p;
            if v > cap {
                break;
            }
            go(powers, left - 1, v, cap, out);
        }
    }
    go(powers, len, 0, cap, out);
}

/// `R(N)` by splitting each ordered tuple into a left half of `floor(s/2)`
/// and a right half of `ceil(s/2)` summands and joining on the sum.
pub fn count_representations_mitm(n: u64, s: u32, k: u32, params: &PsParams) -> Result<u64> {
    check_rep_budget(n, s, k)?;
    let powers = ps_prime_powers(n, k, params)?;
    let mut left = Vec::new();
    tuple_sums(&powers, s / 2, n, &mut left);
    let mut hist: HashMap<u64, u64> = HashMap::new();
    for v in left {
        *hist.entry(v).or_default() += 1;
    }
    let mut right = Vec::new();
    tuple_sums(&powers, s - s / 2, n, &mut right);
    let mut total = 0u64;
    for v in right {
        if let Some(c) = hist.get(&(n - v)) {
            total = total
                .checked_add(*c)
                .ok_or_else(|| Error::Overflow("count exceeds 64 bits".into()))?;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentCount {
    pub k: u32,
    pub t: u32,
    pub x: u64,
    pub count: u128,
}

fn half_histogram(x: u64, k: u32, len: u32) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    hist.insert(0u64, 1u64);
    for _ in 0..len {
        let mut next = BTreeMap::new();
        for (&v, &c) in &hist {
            for n in 1..=x {
                *next.entry(v + n.pow(k)).or_insert(0) += c;
            }
        }
        hist = next;
    }
    hist
}

/// Number of solutions of the symmetric `2t`-fold equation with `n_i <= X`.
pub fn moment_count(t: u32, k: u32, x: u64) -> Result<MomentCount> {
    if t == 0 || k == 0 || x == 0 {
        return Err(Error::InvalidParameter("t, k, X must be >= 1".into()));
    }
    let range = x
        .checked_pow(k)
        .and_then(|v| v.checked_mul(t as u64))
        .filter(|&r| r <= MAX_MOMENT_RANGE)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!("t X^k must stay below {MAX_MOMENT_RANGE}"))
        })?;
    let a = half_histogram(x, k, t.div_ceil(2));
    let b = half_histogram(x, k, t / 2);
    // H_t[v] = number of ordered t-tuples with power sum v
    let mut h = vec![0u32; range as usize + 1];
    for (&va, &ca) in &a {
        for (&vb, &cb) in &b {
            let slot = &mut h[(va + vb) as usize];
            *slot = u32::try_from(ca * cb)
                .ok()
                .and_then(|add| slot.checked_add(add))
                .ok_or_else(|| Error::Overflow("moment histogram exceeds 32 bits".into()))?;
        }
    }
    let count = h.iter().map(|&c| c as u128 * c as u128).sum();
    Ok(MomentCount { k, t, x, count })
}

/// Ordered `2t`-tuples whose second half is a permutation of the first:
/// the sum over multisets of size `t` from `1..=X` of `(t! / prod m_i!)^2`.
pub fn permutation_solutions(t: u32, x: u64) -> u128 {
    fn fact(n: u32) -> u128 {
        (1..=n as u128).product()
    }
    fn go(v: u64, x: u64, left: u32, t: u32, denom: u128) -> u128 {
        if left == 0 {
            let m = fact(t) / denom;
            return m * m;
        }
        if v > x {
            return 0;
        }
        (0..=left).map(|m| go(v + 1, x, left - m, t, denom * fact(m))).sum()
    }
    go(1, x, t, t, 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureCheck {
    pub t: u32,
    pub k: u32,
    pub x: u64,
    pub m: u64,
    pub grid_mean: f64,
    pub count: u128,
    pub relative_error: f64,
    pub exact_threshold: u64,
    pub grid_too_small: bool,
}

/// `(1/M) sum_{j<M} |W(j/M)|^{2t}` against [`moment_count`].
pub fn quadrature_vs_count(t: u32, k: u32, x: u64, m: u64, parts: usize) -> Result<QuadratureCheck> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be >= 1".into()));
    }
    let count = moment_count(t, k, x)?.count;
    let threshold = 2 * t as u64 * x.pow(k) + 1;
    let pieces = partition::map_chunks(0, m, parts, |r| {
        r.map(|j| {
            let alpha = Frac128::from_rational(&Rational::from((j, m)));
            weyl_sum_partitioned(alpha, k, x, 1).norm_sqr().powi(t as i32)
        })
        .sum::<f64>()
    });
    let grid_mean = pieces.into_iter().sum::<f64>() / m as f64;
    let relative_error = (grid_mean - count as f64).abs() / count as f64;
    Ok(QuadratureCheck {
        t,
        k,
        x,
        m,
        grid_mean,
        count,
        relative_error,
        exact_threshold: threshold,
        grid_too_small: m < threshold,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RepRow {
    pub n: u64,
    pub count: u64,
    pub main_term: f64,
    pub admissible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepCountTable {
    pub k: u32,
    pub s: u32,
    pub c: String,
    pub q_max: u64,
    pub modulus: u64,
    /// Window `lo < N <= hi`.
    pub window: (u64, u64),
    pub rows: Vec<RepRow>,
    pub admissible_rows: u64,
    pub mean_ratio: f64,
    pub sum_ratio: f64,
    pub concentration: f64,
}

/// Exact `R(N)` against the main term over a window, with the mean ratio on
/// the class `N = s mod K(k)` and the share of all representations in it.
pub fn compare_to_main_term(
    window: (u64, u64),
    s: u32,
    k: u32,
    params: &PsParams,
    q_max: u64,
    parts: usize,
) -> Result<RepCountTable> {
    let (lo, hi) = window;
    if hi <= lo {
        return Err(Error::InvalidParameter("window needs lo < hi".into()));
    }
    let counts = count_table(hi, s, k, params)?;
    let table = SingularSeriesTable::new(s, k, q_max, parts)?;
    let modulus = modulus_k(k)?;
    let c = params.c_f64();
    let mut rows = Vec::with_capacity((hi - lo) as usize);
    let (mut ratio_sum, mut adm, mut adm_count, mut adm_main, mut total) = (0.0, 0u64, 0u128, 0.0, 0u128);
    for n in lo + 1..=hi {
        let series = table.partial_sum(n as i64);
        let mt = main_term_with_series(&MainTermParams { n, s, k, c }, series)?.value;
        let count = counts[n as usize];
        let admissible = n % modulus == s as u64 % modulus;
        total += count as u128;
        if admissible {
            adm += 1;
            adm_count += count as u128;
            adm_main += mt;
            ratio_sum += count as f64 / mt;
        }
        rows.push(RepRow {
            n,
            count,
            main_term: mt,
            admissible,
        });
    }
    Ok(RepCountTable {
        k,
        s,
        c: params.c_string(),
        q_max,
        modulus,
        window,
        rows,
        admissible_rows: adm,
        mean_ratio: ratio_sum / adm as f64,
        sum_ratio: adm_count as f64 / adm_main,
        concentration: if total == 0 { 0.0 } else { adm_count as f64 / total as f64 },
    })
}
