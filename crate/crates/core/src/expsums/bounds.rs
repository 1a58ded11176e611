//! Direct sums set against the right-hand sides of classical exponential-sum
//! bounds, with every implied constant set to 1 and `N^eps` made explicit.
//!
//! Four families are covered, all summed over `n in (N, 2N]`:
//!
//! - `shift`: `sum e(g(n) + D n^delta)` with `g(x) = alpha x^k`, against
//!   `N^{1+eps} ((D N^{delta-k-1})^sigma + (D N^delta)^{sigma/(l+1)} N^{-sigma}
//!   + (D N^delta)^{-(l-k) sigma/(l+1)})`, `sigma = 1/(l(l-1))`.
//! - `hb`: `f(x) = +-D x^delta + alpha x^{k-1}` with positive `k`-th derivative
//!   in `[lambda, A lambda]`, against
//!   `N^{1+eps} (lambda^{1/k(k-1)} + N^{-1/k(k-1)} + N^{-2/k(k-1)} lambda^{-2/k^2(k-1)})`.
//! - `corput`: the same phase with `|f^{(q+2)}|` in `[lambda, a lambda]` and
//!   `Q = 2^q`, against `|I| (a^2 lambda)^{1/(4Q-2)} + |I|^{1-1/(2Q)} a^{1/(2Q)}
//!   + |I|^{1-2/Q+1/Q^2} lambda^{-1/(2Q)}`.
//! - `type2`: the bilinear sum `sum a_n b_m e(h (mn)^delta + alpha (mn)^k)` over
//!   `m ~ x`, `n ~ N/x`, `mn ~ N`, against `N^{1+eps} S_1`.

use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::phase::{e, pow_wrapping, Frac128};
use crate::error::{Error, Result};

/// Largest `N` a grid may contain.
pub const MAX_BOUND_N: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundLemma {
    Shift,
    Hb,
    Corput,
    TypeII,
}

impl FromStr for BoundLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "shift" => Ok(Self::Shift),
            "hb" => Ok(Self::Hb),
            "corput" => Ok(Self::Corput),
            "typeii" | "type2" => Ok(Self::TypeII),
            _ => Err(Error::InvalidParameter(format!(
                "unknown bound family {s:?} (expected shift, hb, corput, typeII)"
            ))),
        }
    }
}

/// Coefficients `a_n`, `b_m` of the bilinear sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Ones,
    Random,
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ones" => Ok(Self::Ones),
            "random" => Ok(Self::Random),
            _ => Err(Error::InvalidParameter(format!("unknown coefficient kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundGrid {
    pub k: u32,
    pub ell: u32,
    pub delta: f64,
    pub epsilon: f64,
    /// `D` for the single sums, `|h|` for the bilinear one.
    pub d_values: Vec<f64>,
    pub n_values: Vec<u64>,
    pub corput_q: u32,
    /// Bilinear split `x = round(N^theta)`.
    pub x_exponents: Vec<f64>,
    pub coefficients: Coefficients,
    pub seed: u64,
}

impl BoundGrid {
    pub fn new(k: u32, delta: f64) -> Self {
        Self {
            k,
            ell: k + 1,
            delta,
            epsilon: 0.05,
            d_values: vec![10.0, 1000.0],
            n_values: vec![1000, 10_000],
            corput_q: 1,
            x_exponents: vec![0.5],
            coefficients: Coefficients::Ones,
            seed: 0,
        }
    }

    fn validate(&self, lemma: BoundLemma) -> Result<()> {
        if let Some(&n) = self.n_values.iter().find(|&&n| n > MAX_BOUND_N) {
            return Err(Error::GridTooLarge(format!("N = {n} exceeds {MAX_BOUND_N}")));
        }
        if self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::InvalidParameter("every N must be >= 2".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if self.d_values.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::InvalidParameter("D values must be positive".into()));
        }
        match lemma {
            BoundLemma::Shift | BoundLemma::TypeII if self.k < 3 || self.ell < self.k + 1 => {
                Err(Error::InvalidParameter("need k >= 3 and l >= k+1".into()))
            }
            BoundLemma::Hb if self.k < 3 => Err(Error::InvalidParameter("need k >= 3".into())),
            BoundLemma::Corput if self.corput_q == 0 => Err(Error::InvalidParameter("need q >= 1".into())),
            BoundLemma::TypeII if self.x_exponents.iter().any(|t| !(*t > 0.0 && *t < 1.0)) => {
                Err(Error::InvalidParameter("x exponents must lie in (0,1)".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundPoint {
    pub n: u64,
    pub d: f64,
    pub x: Option<u64>,
    pub alpha: f64,
    pub actual: f64,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lemma: BoundLemma,
    pub k: u32,
    pub ell: u32,
    pub sigma: f64,
    pub epsilon: f64,
    pub points: Vec<BoundPoint>,
    pub max_ratio: f64,
}

/// `sum_{lo < n <= hi} e(g(n) + D n^delta)` with `g(x) = sum_j g[j] x^j`.
pub fn shifted_poly_sum(g: &[Frac128], d: f64, delta: f64, lo: u64, hi: u64) -> Complex64 {
    (lo + 1..=hi)
        .map(|n| {
            let mut ph = Frac128::ZERO;
            for (j, c) in g.iter().enumerate() {
                ph = ph.add(c.mul_int(pow_wrapping(n, j as u32)));
            }
            ph.cis() * e(d * (n as f64).powf(delta))
        })
        .sum()
}

/// `delta (delta - 1) ... (delta - r + 1)`.
fn falling(delta: f64, r: u32) -> f64 {
    (0..r).map(|i| delta - i as f64).product()
}

fn monomial(alpha: f64, degree: usize) -> Result<Vec<Frac128>> {
    let mut g = vec![Frac128::ZERO; degree + 1];
    g[degree] = Frac128::from_f64(alpha)?;
    Ok(g)
}

pub fn bound_experiment(lemma: BoundLemma, grid: &BoundGrid) -> Result<BoundReport> {
    grid.validate(lemma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let (k, ell, delta, eps) = (grid.k, grid.ell, grid.delta, grid.epsilon);
    let kf = k as f64;
    let lf = ell as f64;
    let sigma = 1.0 / (lf * (lf - 1.0));
    let mut points = Vec::new();

    for &n in &grid.n_values {
        let nf = n as f64;
        for &d in &grid.d_values {
            match lemma {
                BoundLemma::Shift => {
                    let alpha: f64 = rng.gen();
                    let actual = shifted_poly_sum(&monomial(alpha, k as usize)?, d, delta, n, 2 * n).norm();
                    let dn = d * nf.powf(delta);
                    let bound = nf.powf(1.0 + eps)
                        * ((d * nf.powf(delta - kf - 1.0)).powf(sigma)
                            + dn.powf(sigma / (lf + 1.0)) * nf.powf(-sigma)
                            + dn.powf(-(lf - kf) * sigma / (lf + 1.0)));
                    points.push(point(n, d, None, alpha, actual, bound));
                }
                BoundLemma::Hb | BoundLemma::Corput => {
                    let order = match lemma {
                        BoundLemma::Hb => k,
                        _ => grid.corput_q + 2,
                    };
                    let alpha: f64 = rng.gen();
                    // Sign chosen so the order-th derivative of the D-term is positive.
                    let sign = falling(delta, order).signum();
                    let g = monomial(alpha, order as usize - 1)?;
                    let actual = shifted_poly_sum(&g, sign * d, delta, n, 2 * n).norm();
                    let of = order as f64;
                    let lambda = d * falling(delta, order).abs() * (2.0 * nf).powf(delta - of);
                    let ratio_a = 2f64.powf(of - delta);
                    let bound = if lemma == BoundLemma::Hb {
                        let e1 = 1.0 / (kf * (kf - 1.0));
                        nf.powf(1.0 + eps)
                            * (lambda.powf(e1)
                                + nf.powf(-e1)
                                + nf.powf(-2.0 * e1) * lambda.powf(-2.0 / (kf * kf * (kf - 1.0))))
                    } else {
                        let q = 2f64.powi(grid.corput_q as i32);
                        nf * (ratio_a * ratio_a * lambda).powf(1.0 / (4.0 * q - 2.0))
                            + nf.powf(1.0 - 1.0 / (2.0 * q)) * ratio_a.powf(1.0 / (2.0 * q))
                            + nf.powf(1.0 - 2.0 / q + 1.0 / (q * q)) * lambda.powf(-1.0 / (2.0 * q))
                    };
                    points.push(point(n, d, None, alpha, actual, bound));
                }
                BoundLemma::TypeII => {
                    for &theta in &grid.x_exponents {
                        let x = (nf.powf(theta).round() as u64).max(1);
                        let alpha: f64 = rng.gen();
                        let actual = bilinear_sum(n, x, d, delta, alpha, k, grid.coefficients, &mut rng)?;
                        let xf = x as f64;
                        let s1 = (d * nf.powf(delta - 1.0) * xf.powf(-lf)).powf(sigma / 2.0 / (sigma + lf + 1.0))
                            + (d * nf.powf(delta - 1.0) * xf.powf(-kf)).powf(sigma / 2.0 / (1.0 + sigma))
                            + (d * nf.powf(delta)).powf(-(lf - kf) / (lf + 1.0) * sigma / 2.0)
                            + (xf / nf).sqrt()
                            + xf.powf(-(lf - kf) / (lf - kf + 1.0) * sigma / 2.0);
                        let bound = nf.powf(1.0 + eps) * s1;
                        points.push(point(n, d, Some(x), alpha, actual, bound));
                    }
                }
            }
        }
    }
    let max_ratio = points.iter().map(|p| p.ratio).fold(0.0, f64::max);
    Ok(BoundReport {
        lemma,
        k,
        ell,
        sigma,
        epsilon: eps,
        points,
        max_ratio,
    })
}

fn point(n: u64, d: f64, x: Option<u64>, alpha: f64, actual: f64, bound: f64) -> BoundPoint {
    BoundPoint {
        n,
        d,
        x,
        alpha,
        actual,
        bound,
        ratio: actual / bound,
    }
}

#[allow(clippy::too_many_arguments)]
fn bilinear_sum(
    n: u64,
    x: u64,
    h: f64,
    delta: f64,
    alpha: f64,
    k: u32,
    coeffs: Coefficients,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let y = (n / x).max(1);
    let mut draw = |len: u64| -> Vec<Complex64> {
        match coeffs {
            Coefficients::Ones => vec![Complex64::new(1.0, 0.0); len as usize],
            Coefficients::Random => (0..len).map(|_| e(rng.gen::<f64>())).collect(),
        }
    };
    let b = draw(x);
    let a = draw(y);
    let g = Frac128::from_f64(alpha)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in x + 1..=2 * x {
        let bm = b[(m - x - 1) as usize];
        let mut inner = Complex64::new(0.0, 0.0);
        for nn in y + 1..=2 * y {
            let t = m * nn;
            if t <= n || t > 2 * n {
                continue;
            }
            let ph = g.mul_int(pow_wrapping(t, k)).cis() * e(h * (t as f64).powf(delta));
            inner += a[(nn - y - 1) as usize] * ph;
        }
        acc += bm * inner;
    }
    Ok(acc.norm())
}
