//! Circle-method side: arcs, oscillatory integrals, the main term and the
//! exponent bookkeeping `2t`, `nu`, admissible `c`.

mod arcs;
mod gamma;
mod osc;
pub mod quad;

pub use arcs::{arc_offset, build_major_arcs, Arc, ArcParams, ArcSystem};
pub use gamma::{gamma, li, ln_gamma};
pub use osc::{j_vs_i_check, osc_integral_i, osc_integral_j, JvsI, OscResult, REL_TOL};

use num_complex::Complex64;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::local_arith::{euler_phi, gauss_power_sum, singular_series};
use crate::rational::to_fraction_string;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VApprox {
    pub alpha: f64,
    pub a: u64,
    pub q: u64,
    pub beta: f64,
    pub gauss_sum: Complex64,
    pub j: Complex64,
    pub value: Complex64,
}

/// `v(alpha - a/q) = phi(q)^{-1} S(a,q) J(alpha - a/q)` for `alpha` in `M(a,q)`.
///
/// The arc uses `X = floor(N^{1/k})` and `L = ln X`.
pub fn v_approx(alpha: f64, a: u64, q: u64, n: u64, k: u32, delta: f64, kappa: f64) -> Result<VApprox> {
    let x = integer_root(n, k);
    let params = ArcParams { x, k, kappa };
    let (inside, beta) = arc_offset(alpha, a, q, &params)?;
    if !inside {
        return Err(Error::Domain(format!("alpha = {alpha} is not in M({a},{q})")));
    }
    let s = gauss_power_sum(a as i64, q, k)?;
    let j = osc_integral_j(beta, n, k, delta)?.value;
    Ok(VApprox {
        alpha,
        a,
        q,
        beta,
        gauss_sum: s,
        j,
        value: s / euler_phi(q) as f64 * j,
    })
}

/// `floor(n^{1/k})`.
pub fn integer_root(n: u64, k: u32) -> u64 {
    Integer::from(n).root(k).to_u64().expect("root of u64 fits")
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MainTermParams {
    pub n: u64,
    pub s: u32,
    pub k: u32,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MainTerm {
    pub singular_series: f64,
    pub gamma_factor: f64,
    pub power: f64,
    pub log_power: f64,
    pub value: f64,
}

/// `Gamma(1 + 1/(ck))^s / Gamma(s/(ck))`.
pub fn gamma_factor(s: u32, k: u32, c: f64) -> f64 {
    let ck = c * k as f64;
    (s as f64 * ln_gamma(1.0 + 1.0 / ck) - ln_gamma(s as f64 / ck)).exp()
}

fn check_main(p: &MainTermParams) -> Result<()> {
    if p.s < 5.max(p.k + 1) {
        return Err(Error::InvalidParameter(format!("main term needs s >= max(5, k+1), got s={}", p.s)));
    }
    if !(p.c >= 1.0 && p.c < 2.0) {
        return Err(Error::InvalidParameter(format!("c must lie in [1, 2), got {}", p.c)));
    }
    if p.n < 3 {
        return Err(Error::InvalidParameter("need ln N > 1".into()));
    }
    Ok(())
}

/// The main term with a precomputed singular-series value:
/// `S(N) N^{s/(ck)-1} Gamma(1+1/(ck))^s / Gamma(s/(ck)) / (ln N^{1/k})^s`.
pub fn main_term_with_series(p: &MainTermParams, series: f64) -> Result<MainTerm> {
    check_main(p)?;
    let nf = p.n as f64;
    let ck = p.c * p.k as f64;
    let power = nf.powf(p.s as f64 / ck - 1.0);
    let log_power = (nf.ln() / p.k as f64).powi(p.s as i32);
    let gf = gamma_factor(p.s, p.k, p.c);
    Ok(MainTerm {
        singular_series: series,
        gamma_factor: gf,
        power,
        log_power,
        value: series * power * gf / log_power,
    })
}

/// [`main_term_with_series`] with the series truncated at `q <= q_max`.
pub fn main_term(p: &MainTermParams, q_max: u64) -> Result<MainTerm> {
    check_main(p)?;
    let series = singular_series(p.n as i64, p.s, p.k, q_max)?.partial_sum;
    main_term_with_series(p, series)
}

const TWO_T: [u32; 10] = [8, 16, 24, 34, 48, 62, 78, 98, 118, 142];

/// The smallest admissible `2t` for the `2t`-th Weyl moment.
pub fn two_t_table(k: u32) -> Result<u32> {
    match k {
        0..=2 => Err(Error::Domain(format!("2t is tabulated from k = 3, got {k}"))),
        3..=12 => Ok(TWO_T[(k - 3) as usize]),
        _ => Ok(two_t_formula(k)),
    }
}

/// Smallest even integer `>= k^2 + 1 - max_{1<=s<=k} ceil(s(k-s-1)/(k-s+1))`.
pub fn two_t_formula(k: u32) -> u32 {
    let k = k as i64;
    let best = (1..=k)
        .map(|s| {
            let num = s * (k - s - 1);
            let den = k - s + 1;
            num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
        })
        .max()
        .unwrap_or(0);
    let v = k * k + 1 - best;
    (v + v.rem_euclid(2)) as u32
}

pub fn nu_of_k(k: u32) -> Result<u64> {
    match k {
        0..=3 => Err(Error::Domain(format!("nu is defined for k >= 4, got {k}"))),
        4..=11 => Ok(k as u64 * (k as u64 + 1).pow(2)),
        _ => {
            let m = (3 * k as u64) / 2;
            let num = Integer::from(2 * m) * (Integer::from(m * m) - 1u32);
            let den = m - k as u64;
            let (q, r) = num.div_rem(Integer::from(den));
            if r != 0 {
                return Err(Error::Domain(format!("nu({k}) is not an integer")));
            }
            q.to_u64().ok_or_else(|| Error::Overflow(format!("nu({k}) exceeds 64 bits")))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CRange {
    pub k: u32,
    pub s: u32,
    pub t: u32,
    /// `c_max - 1` as `p/q`.
    pub excess: String,
    /// `"1 + p/q"`.
    pub c_max: String,
    pub c_max_decimal: f64,
    #[serde(skip)]
    pub c_max_exact: Rational,
}

/// The open interval `(1, c_max)` of admissible exponents.
pub fn c_range(k: u32, s: u32, t: u32) -> Result<CRange> {
    if k < 3 {
        return Err(Error::Domain(format!("need k >= 3, got {k}")));
    }
    if s <= 2 * t {
        return Err(Error::Domain(format!("need s > 2t, got s={s}, t={t}")));
    }
    let (s_, t_) = (s as u64, t as u64);
    let excess = if k == 3 {
        let a = Rational::from((1, 77 * s_ + 158 * t_));
        let b = Rational::from((1, 75 * s_ + 164 * t_));
        Rational::from(s_ - 2 * t_) * 3u32 * a.min(b)
    } else {
        let nu = nu_of_k(k)?;
        let den = Integer::from(nu - 1) * s_ + Integer::from(2 * t_) * nu;
        Rational::from((Integer::from(s_ - 2 * t_), den))
    };
    let c_max = Rational::from(&excess + 1u32);
    Ok(CRange {
        k,
        s,
        t,
        excess: to_fraction_string(&excess),
        c_max: format!("1 + {}", to_fraction_string(&excess)),
        c_max_decimal: c_max.to_f64(),
        c_max_exact: c_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_formula() {
        let expect = [8, 16, 24, 34, 48, 62, 78, 98, 118, 142];
        for (k, v) in (3..=12).zip(expect) {
            assert_eq!(two_t_table(k).unwrap(), v);
        }
        assert!(two_t_table(2).is_err());
        assert_eq!(two_t_table(20).unwrap() % 2, 0);
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu_of_k(4).unwrap(), 100);
        assert_eq!(nu_of_k(11).unwrap(), 1584);
        assert_eq!(nu_of_k(12).unwrap(), 1938);
        for k in 12..200 {
            nu_of_k(k).unwrap();
        }
        assert!(nu_of_k(3).is_err());
    }

    #[test]
    fn admissible_c() {
        let r = c_range(3, 9, 4).unwrap();
        assert_eq!(r.c_max, "1 + 3/1331");
        assert_eq!(r.c_max_exact, Rational::from((1334, 1331)));
        let r = c_range(4, 17, 8).unwrap();
        assert_eq!(r.c_max, "1 + 1/3283");
        assert!(c_range(3, 8, 4).is_err());
    }

    #[test]
    fn gamma_factor_trivial() {
        assert!((gamma_factor(2, 1, 1.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn main_term_classical_shape() {
        let p = MainTermParams { n: 100_000, s: 5, k: 3, c: 1.0 };
        let m = main_term(&p, 1).unwrap();
        let expect = 100_000f64.powf(5.0 / 3.0 - 1.0) * gamma(1.0 + 1.0 / 3.0).powi(5)
            / gamma(5.0 / 3.0)
            / (100_000f64.ln() / 3.0).powi(5);
        assert!((m.value / expect - 1.0).abs() < 1e-12);
        assert!(main_term(&MainTermParams { s: 4, ..p }, 1).is_err());
    }
}
