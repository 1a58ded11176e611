//! Vaughan's identity, evaluated term by term over the divisors of `n`.
//!
//! ```text
//! Lambda(n) = sum_{ab=n, a<=u} mu(a) log b
//!           - sum_{ab=n, a>v, b>u} Lambda(a) sum_{d|b, d<=u} mu(d)
//!           - sum_{abc=n, b<=u, a<=v} mu(b) Lambda(a)
//! ```
//!
//! valid for `u, v >= 1` and `n > v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::local_arith::{mobius, von_mangoldt};
use crate::primes::factorize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VaughanTerms {
    pub n: u64,
    pub u: f64,
    pub v: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// `e1 - e2 - e3`.
    pub combination: f64,
    pub lambda: f64,
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn vaughan_decompose(n: u64, u: f64, v: f64) -> Result<VaughanTerms> {
    if !(u >= 1.0 && v >= 1.0) {
        return Err(Error::InvalidParameter(format!("need u, v >= 1, got u={u}, v={v}")));
    }
    if n == 0 || (n as f64) <= v {
        return Err(Error::Domain(format!("identity needs n > v, got n={n}, v={v}")));
    }
    let divs = divisors(n);
    let le = |x: u64, bound: f64| (x as f64) <= bound;

    let e1 = divs
        .iter()
        .filter(|&&a| le(a, u))
        .map(|&a| mobius(a) as f64 * ((n / a) as f64).ln())
        .sum();

    let e2 = divs
        .iter()
        .filter(|&&a| !le(a, v) && !le(n / a, u))
        .map(|&a| {
            let b = n / a;
            let inner: i64 = divisors(b)
                .into_iter()
                .filter(|&d| le(d, u))
                .map(|d| mobius(d) as i64)
                .sum();
            von_mangoldt(a) * inner as f64
        })
        .sum();

    let mut e3 = 0.0;
    for &a in divs.iter().filter(|&&a| le(a, v)) {
        let la = von_mangoldt(a);
        if la == 0.0 {
            continue;
        }
        for b in divisors(n / a).into_iter().filter(|&b| le(b, u)) {
            e3 += mobius(b) as f64 * la;
        }
    }

    Ok(VaughanTerms {
        n,
        u,
        v,
        e1,
        e2,
        e3,
        combination: e1 - e2 - e3,
        lambda: von_mangoldt(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn worked_cases() {
        let t = vaughan_decompose(101, 5.0, 5.0).unwrap();
        assert!((t.combination - 101f64.ln()).abs() < 1e-12);
        let t = vaughan_decompose(12, 2.0, 2.0).unwrap();
        assert!(t.combination.abs() < 1e-12);
        let t = vaughan_decompose(8, 2.0, 2.0).unwrap();
        assert!((t.combination - 2f64.ln()).abs() < 1e-12);
        assert!(matches!(vaughan_decompose(5, 5.0, 5.0), Err(Error::Domain(_))));
    }
}
