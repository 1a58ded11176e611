//! Exponential sums over integers, primes and Piatetski-Shapiro primes.
//!
//! Phases `alpha n^k` are reduced mod 1 in 128-bit fixed point (see
//! [`Frac128`]) before a single complex exponential is taken per term. Sums
//! are accumulated in ascending index order within each partition and the
//! partial results are added in partition order, so a given partition count
//! always reproduces the same bits.

mod bounds;
mod phase;
mod vaaler;
mod vaughan;

pub use bounds::{
    bound_experiment, shifted_poly_sum, BoundGrid, BoundLemma, BoundPoint, BoundReport, Coefficients,
    MAX_BOUND_N,
};
pub use phase::{e, pow_wrapping, Frac128};
pub use vaaler::{build_vaaler, psi, vaaler_check, VaalerCheck, VaalerPolynomial};
pub use vaughan::{divisors, vaughan_decompose, VaughanTerms};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition;
use crate::primes::primes_up_to;
use crate::ps_core::{delta_psi, enumerate_ps_primes, PsParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    Weyl,
    TWeighted,
    SPs,
    ShiftedPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpSumSample {
    pub kind: SumKind,
    pub alpha: f64,
    pub k: u32,
    pub x: u64,
    pub value: Complex64,
    pub terms: u64,
    pub c: Option<String>,
}

fn phase_sum(alpha: Frac128, k: u32, ns: impl Iterator<Item = u64>) -> Complex64 {
    ns.map(|n| alpha.mul_int(pow_wrapping(n, k)).cis()).sum()
}

/// `sum_{n <= X} e(alpha n^k)`.
pub fn weyl_sum(alpha: Frac128, k: u32, x: u64) -> Complex64 {
    weyl_sum_partitioned(alpha, k, x, 1)
}

pub fn weyl_sum_partitioned(alpha: Frac128, k: u32, x: u64, parts: usize) -> Complex64 {
    partition::map_chunks(1, x + 1, parts, |r| phase_sum(alpha, k, r))
        .into_iter()
        .sum()
}

/// `S_{c,k}(alpha, X)`: the sum of `e(alpha p^k)` over PS primes `p <= X`.
pub fn ps_prime_sum(alpha: Frac128, k: u32, x: u64, params: &PsParams) -> Result<Complex64> {
    ps_prime_sum_partitioned(alpha, k, x, params, 1)
}

pub fn ps_prime_sum_partitioned(
    alpha: Frac128,
    k: u32,
    x: u64,
    params: &PsParams,
    parts: usize,
) -> Result<Complex64> {
    if x < 2 {
        return Err(Error::InvalidParameter("X must be >= 2".into()));
    }
    let primes = crate::ps_core::enumerate_ps_primes_partitioned(x, params, parts)?;
    Ok(phase_sum(alpha, k, primes.into_iter()))
}

/// `T_{c,k}(alpha, X) = sum_{p <= X} delta p^{delta-1} e(alpha p^k)` over all primes.
pub fn weighted_prime_sum(alpha: Frac128, k: u32, x: u64, params: &PsParams) -> Result<Complex64> {
    if x < 2 {
        return Err(Error::InvalidParameter("X must be >= 2".into()));
    }
    let d = params.delta_f64();
    Ok(primes_up_to(x)
        .into_iter()
        .map(|p| d * (p as f64).powf(d - 1.0) * alpha.mul_int(pow_wrapping(p, k)).cis())
        .sum())
}

/// The pieces of `S_{c,k}(0,X) - T_{c,k}(0,X) - sum_{p <= X} Delta psi(p)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StDecomposition {
    pub x: u64,
    pub ps_prime_count: u64,
    pub weighted_sum: f64,
    pub delta_psi_sum: f64,
    pub residual: f64,
}

pub fn st_decomposition(x: u64, params: &PsParams) -> Result<StDecomposition> {
    if x < 2 {
        return Err(Error::InvalidParameter("X must be >= 2".into()));
    }
    let count = enumerate_ps_primes(x, params)?.len() as u64;
    let weighted = weighted_prime_sum(Frac128::ZERO, 1, x, params)?.re;
    let mut dpsi = 0.0;
    for p in primes_up_to(x) {
        dpsi += delta_psi(p, params)?;
    }
    Ok(StDecomposition {
        x,
        ps_prime_count: count,
        weighted_sum: weighted,
        delta_psi_sum: dpsi,
        residual: count as f64 - weighted - dpsi,
    })
}
