//! Local factors of the Waring-Goldbach problem.
//!
//! `K(k) = prod_{(p-1) | k} p^gamma(p,k)`, the complete sums
//! `S(a,q) = sum_{1<=x<=q, (x,q)=1} e(a x^k / q)`,
//! `S_m(q) = sum_{(a,q)=1} (S(a,q)/phi(q))^s e(-m a / q)` and truncations of the
//! singular series `sum_q S_m(q)`.
//!
//! `S(a,q)` has two routes. [`gauss_power_sum`] sums directly, one integer
//! phase `a x^k mod q` per term. [`gauss_sums_all`] returns every `a mod q`
//! at once by histogramming `x^k mod q` and applying one DFT.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition;
use crate::primes::{factorize, gcd, is_prime, pow_mod};

/// Exponent slack standing in for the free epsilon of the `q^{1/2+eps}` bound.
pub const TAIL_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalExponent {
    pub p: u64,
    pub k: u32,
    pub theta: u32,
    pub gamma: u32,
}

pub fn theta_gamma(p: u64, k: u32) -> Result<LocalExponent> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut theta = 0;
    let mut rest = k as u64;
    while rest % p == 0 {
        rest /= p;
        theta += 1;
    }
    let gamma = if p == 2 && k % 2 == 0 { theta + 2 } else { theta + 1 };
    Ok(LocalExponent { p, k, theta, gamma })
}

/// The primes `p` with `(p - 1) | k`, ascending.
pub fn k_primes(k: u32) -> Vec<u64> {
    (1..=k as u64)
        .filter(|d| k as u64 % d == 0 && is_prime(d + 1))
        .map(|d| d + 1)
        .collect()
}

/// `K(k)`.
pub fn modulus_k(k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut acc: u64 = 1;
    for p in k_primes(k) {
        let le = theta_gamma(p, k)?;
        acc = p
            .checked_pow(le.gamma)
            .and_then(|f| acc.checked_mul(f))
            .ok_or_else(|| Error::Overflow(format!("K({k}) exceeds 64 bits")))?;
    }
    Ok(acc)
}

fn e(num: u64, den: u64) -> Complex64 {
    let (s, c) = (TAU * num as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

fn reduce(a: i64, q: u64) -> u64 {
    a.rem_euclid(q as i64) as u64
}

/// `S(a,q)` by direct summation.
pub fn gauss_power_sum(a: i64, q: u64, k: u32) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::InvalidModulus);
    }
    let a = reduce(a, q);
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 1..=q {
        if gcd(x, q) == 1 {
            let r = ((a as u128 * pow_mod(x, k as u64, q) as u128) % q as u128) as u64;
            acc += e(r, q);
        }
    }
    Ok(acc)
}

/// `S(a, q1 q2)` assembled from its coprime factors:
/// `S(a q2^{k-1}, q1) S(a q1^{k-1}, q2)`.
pub fn gauss_power_sum_crt(a: i64, q1: u64, q2: u64, k: u32) -> Result<Complex64> {
    if q1 == 0 || q2 == 0 {
        return Err(Error::InvalidModulus);
    }
    if gcd(q1, q2) != 1 {
        return Err(Error::InvalidParameter(format!("{q1} and {q2} are not coprime")));
    }
    let km1 = k as u64 - 1;
    let a1 = (reduce(a, q1) as u128 * pow_mod(q2, km1, q1) as u128 % q1 as u128) as i64;
    let a2 = (reduce(a, q2) as u128 * pow_mod(q1, km1, q2) as u128 % q2 as u128) as i64;
    Ok(gauss_power_sum(a1, q1, k)? * gauss_power_sum(a2, q2, k)?)
}

fn plan(q: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(q)
    } else {
        planner.plan_fft_forward(q)
    }
}

/// `S(a,q)` for every `a = 0, ..., q-1`.
pub fn gauss_sums_all(q: u64, k: u32) -> Result<Vec<Complex64>> {
    if q == 0 {
        return Err(Error::InvalidModulus);
    }
    let n = q as usize;
    let mut hist = vec![Complex64::new(0.0, 0.0); n];
    for x in 1..=q {
        if gcd(x, q) == 1 {
            hist[pow_mod(x, k as u64, q) as usize].re += 1.0;
        }
    }
    // sum_r hist[r] e(a r / q) is an unnormalized inverse DFT.
    plan(n, true).process(&mut hist);
    Ok(hist)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn unit_powers(q: u64, s: u32, k: u32) -> Result<Vec<Complex64>> {
    let phi = euler_phi(q) as f64;
    let sums = gauss_sums_all(q, k)?;
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(a, v)| {
            if gcd(a as u64, q) == 1 {
                (v / phi).powi(s as i32)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect())
}

/// `S_m(q)` with the imaginary part kept, for callers that want to inspect it.
pub fn s_m_of_q_complex(m: i64, q: u64, s: u32, k: u32) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::InvalidModulus);
    }
    let m = reduce(m, q);
    let u = unit_powers(q, s, k)?;
    Ok(u.iter()
        .enumerate()
        .map(|(a, v)| v * e(q - (m as u128 * a as u128 % q as u128) as u64, q))
        .sum())
}

/// `S_m(q)`, which is real since `a` and `q - a` pair up into conjugates.
pub fn s_m_of_q(m: i64, q: u64, s: u32, k: u32) -> Result<f64> {
    let z = s_m_of_q_complex(m, q, s, k)?;
    debug_assert!(z.im.abs() < 1e-9 * euler_phi(q).max(1) as f64, "S_m(q) not real: {z}");
    Ok(z.re)
}

/// Reference `S_m(q)` built on [`gauss_power_sum`] only.
pub fn s_m_of_q_direct(m: i64, q: u64, s: u32, k: u32) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidModulus);
    }
    let phi = euler_phi(q) as f64;
    let m = reduce(m, q);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if gcd(a, q) == 1 {
            let term = (gauss_power_sum(a as i64, q, k)? / phi).powi(s as i32);
            acc += term * e(q - (m as u128 * a as u128 % q as u128) as u64, q);
        }
    }
    Ok(acc.re)
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularSeriesResult {
    pub m: i64,
    pub s: u32,
    pub k: u32,
    pub q_max: u64,
    pub terms: Vec<(u64, f64)>,
    pub partial_sum: f64,
    pub tail_bound_estimate: f64,
}

/// `sum_{q > Q} q^{1 - s/2 + eps}`, replaced by its integral `Q^{b+1} / (-b-1)`.
pub fn tail_estimate(s: u32, q_max: u64) -> f64 {
    let b = 1.0 - s as f64 / 2.0 + TAIL_EPSILON;
    (q_max as f64).powf(b + 1.0) / (-b - 1.0)
}

fn check_series_args(s: u32, k: u32, q_max: u64) -> Result<()> {
    if s < 5 {
        return Err(Error::InvalidParameter(format!("singular series needs s >= 5, got {s}")));
    }
    if k == 0 || q_max == 0 {
        return Err(Error::InvalidParameter("k and Q must be >= 1".into()));
    }
    Ok(())
}

pub fn singular_series(m: i64, s: u32, k: u32, q_max: u64) -> Result<SingularSeriesResult> {
    singular_series_partitioned(m, s, k, q_max, 1)
}

pub fn singular_series_partitioned(
    m: i64,
    s: u32,
    k: u32,
    q_max: u64,
    parts: usize,
) -> Result<SingularSeriesResult> {
    check_series_args(s, k, q_max)?;
    let chunks = partition::map_chunks(1, q_max + 1, parts, |range| {
        range
            .map(|q| s_m_of_q(m, q, s, k).map(|v| (q, v)))
            .collect::<Result<Vec<_>>>()
    });
    let mut terms = Vec::with_capacity(q_max as usize);
    for c in chunks {
        terms.extend(c?);
    }
    let partial_sum = terms.iter().map(|&(_, v)| v).sum();
    Ok(SingularSeriesResult {
        m,
        s,
        k,
        q_max,
        terms,
        partial_sum,
        tail_bound_estimate: tail_estimate(s, q_max),
    })
}

/// Truncated singular series for many `m` at once.
///
/// For each `q` the row `T_q[r] = sum_a (S(a,q)/phi(q))^s e(-r a / q)` is a
/// forward DFT, so `sum_{q <= Q} S_m(q) = sum_q T_q[m mod q]`.
#[derive(Debug, Clone)]
pub struct SingularSeriesTable {
    pub s: u32,
    pub k: u32,
    pub q_max: u64,
    rows: Vec<Vec<f64>>,
}

impl SingularSeriesTable {
    pub fn new(s: u32, k: u32, q_max: u64, parts: usize) -> Result<Self> {
        check_series_args(s, k, q_max)?;
        let chunks = partition::map_chunks(1, q_max + 1, parts, |range| {
            range
                .map(|q| {
                    let mut u = unit_powers(q, s, k)?;
                    plan(q as usize, false).process(&mut u);
                    Ok(u.into_iter().map(|z| z.re).collect())
                })
                .collect::<Result<Vec<Vec<f64>>>>()
        });
        let mut rows = Vec::with_capacity(q_max as usize);
        for c in chunks {
            rows.extend(c?);
        }
        Ok(Self { s, k, q_max, rows })
    }

    pub fn term(&self, m: i64, q: u64) -> f64 {
        self.rows[q as usize - 1][reduce(m, q) as usize]
    }

    pub fn partial_sum(&self, m: i64) -> f64 {
        (1..=self.q_max).map(|q| self.term(m, q)).sum()
    }
}

/// Largest `|S(a,q)| / q^exponent` over `q <= q_max`, `(a,q) = 1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GaussBoundScan {
    pub k: u32,
    pub q_max: u64,
    pub exponent: f64,
    pub max_ratio: f64,
    pub argmax_a: u64,
    pub argmax_q: u64,
}

pub fn gauss_bound_scan(k: u32, q_max: u64, exponent: f64, parts: usize) -> Result<GaussBoundScan> {
    if q_max == 0 {
        return Err(Error::InvalidModulus);
    }
    let best = partition::map_chunks(1, q_max + 1, parts, |range| -> Result<(f64, u64, u64)> {
        let mut best = (0.0, 1, 1);
        for q in range {
            let sums = gauss_sums_all(q, k)?;
            let scale = (q as f64).powf(exponent);
            for (a, v) in sums.iter().enumerate() {
                let a = if q == 1 { 1 } else { a as u64 };
                if a == 0 || gcd(a, q) != 1 {
                    continue;
                }
                let ratio = v.norm() / scale;
                if ratio > best.0 {
                    best = (ratio, a, q);
                }
            }
        }
        Ok(best)
    });
    let mut out = (0.0, 1, 1);
    for b in best {
        let b = b?;
        if b.0 > out.0 {
            out = b;
        }
    }
    Ok(GaussBoundScan {
        k,
        q_max,
        exponent,
        max_ratio: out.0,
        argmax_a: out.1,
        argmax_q: out.2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArithmeticFunctions {
    pub n: u64,
    pub phi: u64,
    pub mu: i8,
    pub lambda: f64,
    pub omega: u32,
}

pub fn arithmetic_functions(n: u64) -> Result<ArithmeticFunctions> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let f = factorize(n);
    let squarefree = f.iter().all(|&(_, e)| e == 1);
    let mu = if !squarefree {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    };
    let lambda = match f.as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    };
    Ok(ArithmeticFunctions {
        n,
        phi: euler_phi(n),
        mu,
        lambda,
        omega: f.len() as u32,
    })
}

/// `Lambda(n)`.
pub fn von_mangoldt(n: u64) -> f64 {
    match factorize(n).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

/// `mu(n)`.
pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
