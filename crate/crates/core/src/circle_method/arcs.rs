//! Major arcs `M(a,q) = { alpha : |q alpha - a| <= L^kappa X^{-k} }` for
//! coprime `1 <= a <= q <= L^kappa`, inside `U = (w, 1 + w]`,
//! `w = L^kappa X^{-k}`, `L = ln X`.
//!
//! `L^kappa` is computed once in `f64` and then carried as the exact rational
//! equal to that double, so every endpoint comparison below is exact.

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::local_arith::euler_phi;
use crate::primes::gcd;
use crate::rational::to_fraction_string;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcParams {
    pub x: u64,
    pub k: u32,
    pub kappa: f64,
}

impl ArcParams {
    pub fn l(&self) -> f64 {
        (self.x as f64).ln()
    }

    /// `L^kappa` as an exact rational.
    pub fn l_kappa(&self) -> Rational {
        Rational::from_f64(self.l().powf(self.kappa)).expect("finite")
    }

    pub fn x_pow_k(&self) -> Integer {
        Integer::from(self.x).pow(self.k)
    }

    fn validate(&self) -> Result<()> {
        if self.x < 3 || self.k == 0 || !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidParameter("need X >= 3, k >= 1, kappa > 0".into()));
        }
        if self.l_kappa() * 2u32 >= self.x_pow_k() {
            return Err(Error::InvalidParameter(
                "L^kappa must stay below X^k / 2 for arcs to fit in the unit interval".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Arc {
    pub a: u64,
    pub q: u64,
    pub center: f64,
    pub halfwidth: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcSystem {
    pub params: ArcParams,
    pub l_kappa: String,
    pub q_max: u64,
    pub arcs: Vec<Arc>,
    /// Left end `w` of `U = (w, 1 + w]`.
    pub unit_interval_start: f64,
    pub total_measure: f64,
    pub minor_measure: f64,
}

impl ArcSystem {
    pub fn expected_count(&self) -> u64 {
        (1..=self.q_max).map(euler_phi).sum()
    }
}

pub fn build_major_arcs(params: ArcParams) -> Result<ArcSystem> {
    params.validate()?;
    let lk = params.l_kappa();
    let xk = params.x_pow_k();
    let q_max = Integer::from(lk.floor_ref())
        .to_u64()
        .ok_or_else(|| Error::BudgetExceeded("L^kappa too large to enumerate".into()))?;
    if q_max > 100_000 {
        return Err(Error::BudgetExceeded(format!("{q_max} denominators requested")));
    }
    let w = Rational::from((lk.numer().clone(), Integer::from(lk.denom() * &xk)));

    // (lower, upper, a, q) with exact rational ends
    let mut exact = Vec::new();
    for q in 1..=q_max {
        let hw = Rational::from(&w / q);
        for a in 1..=q {
            if gcd(a, q) != 1 {
                continue;
            }
            let c = Rational::from((a, q));
            exact.push((Rational::from(&c - &hw), Rational::from(&c + &hw), a, q));
        }
    }
    let one_plus_w = Rational::from(&w + 1u32);
    for (lo, hi, a, q) in &exact {
        if *lo <= w || *hi > one_plus_w {
            return Err(Error::Domain(format!(
                "arc ({a},{q}) leaves the unit interval (w = {})",
                to_fraction_string(&w)
            )));
        }
    }
    exact.sort_by(|x, y| x.0.cmp(&y.0));
    for pair in exact.windows(2) {
        if pair[0].1 >= pair[1].0 {
            return Err(Error::ArcsOverlap {
                a1: pair[0].2,
                q1: pair[0].3,
                a2: pair[1].2,
                q2: pair[1].3,
            });
        }
    }
    exact.sort_by_key(|&(_, _, a, q)| (q, a));
    let mut measure = Rational::new();
    for (lo, hi, _, _) in &exact {
        measure += Rational::from(hi - lo);
    }
    let arcs = exact
        .iter()
        .map(|(_, _, a, q)| Arc {
            a: *a,
            q: *q,
            center: *a as f64 / *q as f64,
            halfwidth: Rational::from(&w / *q).to_f64(),
        })
        .collect();
    let total = measure.to_f64();
    Ok(ArcSystem {
        params,
        l_kappa: to_fraction_string(&lk),
        q_max,
        arcs,
        unit_interval_start: w.to_f64(),
        total_measure: total,
        minor_measure: 1.0 - total,
    })
}

/// Whether `alpha` lies in `M(a,q)` once reduced to the representative of
/// `alpha - a/q` in `(-1/2, 1/2]`. Returns that offset as well.
pub fn arc_offset(alpha: f64, a: u64, q: u64, params: &ArcParams) -> Result<(bool, f64)> {
    if q == 0 || gcd(a, q) != 1 {
        return Err(Error::InvalidParameter(format!("({a},{q}) is not a reduced fraction")));
    }
    let alpha_r = Rational::from_f64(alpha)
        .ok_or_else(|| Error::InvalidParameter("alpha must be finite".into()))?;
    let mut beta = alpha_r - Rational::from((a, q));
    let shift = Rational::from(&beta + Rational::from((1, 2)));
    let n = Integer::from(shift.ceil_ref()) - 1u32;
    beta -= n;
    let w = params.l_kappa() / params.x_pow_k();
    let inside = Rational::from(&beta * q).abs() <= w;
    Ok((inside, beta.to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        let s = build_major_arcs(ArcParams { x: 100, k: 3, kappa: 1.0 }).unwrap();
        assert_eq!(s.q_max, 4);
        assert_eq!(s.arcs.len(), 6);
        assert_eq!(s.expected_count(), 6);
        let tiny = build_major_arcs(ArcParams { x: 100, k: 3, kappa: 1e-9 }).unwrap();
        assert_eq!(tiny.arcs.len(), 1);
        assert_eq!((tiny.arcs[0].a, tiny.arcs[0].q), (1, 1));
    }

    #[test]
    fn offsets_wrap() {
        let p = ArcParams { x: 1024, k: 3, kappa: 1.0 };
        let (inside, beta) = arc_offset(0.0, 1, 1, &p).unwrap();
        assert!(inside && beta == 0.0);
        let (inside, beta) = arc_offset(0.5 + 1e-12, 1, 2, &p).unwrap();
        assert!(inside && (beta - 1e-12).abs() < 1e-15);
        let r = arc_offset(0.25, 1, 1, &p).unwrap();
        assert!(!r.0, "{r:?}");
    }

    #[test]
    fn crowded_arcs_are_rejected() {
        let r = build_major_arcs(ArcParams { x: 8, k: 1, kappa: 1.5 });
        assert!(r.is_err());
    }
}
