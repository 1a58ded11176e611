//! The oscillatory integrals
//!
//! ```text
//! I(z) = int_0^{N^{1/k}} delta x^{delta-1} e(z x^k) dx
//! J(z) = int_2^{N^{1/k}} delta x^{delta-1} e(z x^k) / ln x dx
//! ```
//!
//! After `y = x^k`, with `a = delta/k`, both become `int w(y) e(zy) dy` with
//! `w(y) = a y^{a-1}` on `[0, N]` and `w(y) = a k y^{a-1} / ln y` on
//! `[2^k, N]`. The `y` axis is cut into half-periods `1/(2|z|)` measured from
//! an integer base point, whose phase `e(z y0)` is reduced exactly. Each panel
//! is integrated by adaptive Gauss-Kronrod, in `ln y` when it spans a wide
//! ratio and through `u = y^a` when it touches the singular endpoint `y = 0`.
//! When there are too many half-periods, `int_A^B = int_A^inf - int_B^inf` and
//! each tail is the limit of an alternating panel series, accelerated by
//! repeated averaging of its partial sums.

use num_complex::Complex64;
use serde::Serialize;

use super::quad::adaptive;
use crate::error::{Error, Result};
use crate::expsums::{e, Frac128};

/// Half-periods summed directly before switching to tail differences.
const DIRECT_HALF_PERIODS: f64 = 400.0;
/// Averaging depth for the alternating tail series.
const AVERAGING_LEVELS: usize = 24;
const MAX_TAIL_PANELS: usize = 1 << 14;
/// Relative accuracy target, scaled by `N^{delta/k}`.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    I,
    J,
}

#[derive(Debug, Clone, Copy)]
struct Osc {
    weight: Weight,
    a: f64,
    k: f64,
    z: f64,
}

impl Osc {
    fn w(&self, y: f64) -> f64 {
        match self.weight {
            Weight::I => self.a * y.powf(self.a - 1.0),
            Weight::J => self.a * self.k * y.powf(self.a - 1.0) / y.ln(),
        }
    }

    /// `int_{s_lo}^{s_hi} w(y0 + s) e(z s) ds`.
    fn panel(&self, y0: f64, s_lo: f64, s_hi: f64, tol: f64) -> Result<(Complex64, f64)> {
        let z = self.z;
        if y0 == 0.0 && s_lo == 0.0 && self.weight == Weight::I {
            // a y^{a-1} dy = du with u = y^a
            let inv = 1.0 / self.a;
            let f = |u: f64| e(z * u.powf(inv));
            return adaptive(&f, 0.0, s_hi.powf(self.a), tol);
        }
        let (y_lo, y_hi) = (y0 + s_lo, y0 + s_hi);
        if y_hi > 1.5 * y_lo {
            let f = |t: f64| {
                let y = t.exp();
                e(z * (y - y0)) * (self.w(y) * y)
            };
            adaptive(&f, y_lo.ln(), y_hi.ln(), tol)
        } else {
            let f = |s: f64| e(z * s) * self.w(y0 + s);
            adaptive(&f, s_lo, s_hi, tol)
        }
    }

    /// `e(z y0)` for an integer base point, exact in the phase.
    fn base_phase(&self, y0: u64) -> Result<Complex64> {
        Ok(Frac128::from_f64(self.z)?.mul_int(y0 as u128).cis())
    }

    fn direct(&self, lo: u64, hi: u64, tol: f64) -> Result<(Complex64, f64, u64)> {
        let len = (hi - lo) as f64;
        let step = if self.z == 0.0 { len } else { 0.5 / self.z };
        let count = (len / step).ceil().max(1.0) as u64;
        let y0 = lo as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for j in 0..count {
            let s_lo = j as f64 * step;
            let s_hi = ((j + 1) as f64 * step).min(len);
            if s_hi <= s_lo {
                break;
            }
            let (v, e) = self.panel(y0, s_lo, s_hi, tol / count as f64)?;
            acc += v;
            err += e;
        }
        Ok((acc * self.base_phase(lo)?, err, count))
    }

    /// `int_{y0}^inf w(y) e(zy) dy`.
    fn tail(&self, y0: u64, tol: f64) -> Result<(Complex64, f64, u64)> {
        let h = 0.5 / self.z;
        let base = y0 as f64;
        let mut sums: Vec<Complex64> = Vec::new();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut quad_err = 0.0;
        let mut target = 64;
        loop {
            while sums.len() < target {
                let j = sums.len() as f64;
                let (v, e) = self.panel(base, j * h, (j + 1.0) * h, tol * 1e-3)?;
                acc += v;
                quad_err += e;
                sums.push(acc);
            }
            let n = sums.len();
            let window = AVERAGING_LEVELS + 1;
            let est = repeated_average(&sums[n - window..]);
            let prev = repeated_average(&sums[n - window - 1..n - 1]);
            let diff = (est - prev).norm();
            if diff <= tol {
                return Ok((est * self.base_phase(y0)?, diff + quad_err, n as u64));
            }
            target *= 2;
            if target > MAX_TAIL_PANELS {
                return Err(Error::QuadratureNotConverged(format!(
                    "tail from y = {y0} did not settle (last change {diff:e})"
                )));
            }
        }
    }

    fn integrate(&self, lo: u64, hi: u64, tol: f64) -> Result<OscResult> {
        if self.z < 0.0 {
            let mut r = Osc { z: -self.z, ..*self }.integrate(lo, hi, tol)?;
            r.value = r.value.conj();
            return Ok(r);
        }
        let half_periods = 2.0 * self.z * (hi - lo) as f64;
        let (value, err, panels) = if half_periods <= DIRECT_HALF_PERIODS {
            self.direct(lo, hi, tol)?
        } else {
            let (a, ea, pa) = self.tail(lo, tol / 2.0)?;
            let (b, eb, pb) = self.tail(hi, tol / 2.0)?;
            (a - b, ea + eb, pa + pb)
        };
        Ok(OscResult {
            value,
            error_estimate: err,
            panels,
        })
    }
}

fn repeated_average(seq: &[Complex64]) -> Complex64 {
    let mut v = seq.to_vec();
    while v.len() > 1 {
        for i in 0..v.len() - 1 {
            v[i] = (v[i] + v[i + 1]) * 0.5;
        }
        v.pop();
    }
    v[0]
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OscResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels: u64,
}

fn check(z: f64, n: u64, k: u32, delta: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::InvalidParameter("z must be finite".into()));
    }
    if n < 2 || k == 0 {
        return Err(Error::InvalidParameter("need N >= 2 and k >= 1".into()));
    }
    if !(delta > 0.5 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!("delta must lie in (1/2, 1], got {delta}")));
    }
    Ok(())
}

/// `I(z)`.
pub fn osc_integral_i(z: f64, n: u64, k: u32, delta: f64) -> Result<OscResult> {
    check(z, n, k, delta)?;
    let a = delta / k as f64;
    let scale = (n as f64).powf(a);
    if z == 0.0 {
        return Ok(OscResult {
            value: Complex64::new(scale, 0.0),
            error_estimate: 0.0,
            panels: 0,
        });
    }
    let osc = Osc {
        weight: Weight::I,
        a,
        k: k as f64,
        z,
    };
    osc.integrate(0, n, REL_TOL * scale)
}

/// `J(z)`.
pub fn osc_integral_j(z: f64, n: u64, k: u32, delta: f64) -> Result<OscResult> {
    check(z, n, k, delta)?;
    let lo = 2u64
        .checked_pow(k)
        .filter(|&lo| lo < n)
        .ok_or_else(|| Error::InvalidParameter(format!("need N^(1/k) > 2, got N={n}, k={k}")))?;
    let a = delta / k as f64;
    let osc = Osc {
        weight: Weight::J,
        a,
        k: k as f64,
        z,
    };
    osc.integrate(lo, n, REL_TOL * (n as f64).powf(a))
}

/// `J(beta) - I(beta) / L` against `N^a / L^{kappa+2} + min(N^a, |beta|^{-a}) lnln N / L^2`,
/// where `L = ln N^{1/k}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JvsI {
    pub beta: f64,
    pub j: Complex64,
    pub i_over_l: Complex64,
    pub difference: f64,
    pub rhs: f64,
    pub ratio: f64,
}

pub fn j_vs_i_check(beta: f64, n: u64, k: u32, delta: f64, kappa: f64) -> Result<JvsI> {
    let j = osc_integral_j(beta, n, k, delta)?.value;
    let i = osc_integral_i(beta, n, k, delta)?.value;
    let nf = n as f64;
    let l = nf.ln() / k as f64;
    let a = delta / k as f64;
    let na = nf.powf(a);
    let m = if beta == 0.0 { na } else { na.min(beta.abs().powf(-a)) };
    let rhs = na / l.powf(kappa + 2.0) + m * nf.ln().ln() / (l * l);
    let difference = (j - i / l).norm();
    Ok(JvsI {
        beta,
        j,
        i_over_l: i / l,
        difference,
        rhs,
        ratio: difference / rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::super::gamma::{gamma, li};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linear_phase_closed_form() {
        for &(z, n) in &[(0.37, 10u64), (-0.011, 1000), (2.5, 100_000), (1e-4, 1_000_000)] {
            let v = osc_integral_i(z, n, 1, 1.0).unwrap().value;
            let w = Complex64::new(0.0, 2.0 * PI * z * n as f64).exp();
            let exact = (w - 1.0) / Complex64::new(0.0, 2.0 * PI * z);
            assert!((v - exact).norm() < 1e-9 * n as f64, "z={z} n={n}: {v} vs {exact}");
        }
    }

    #[test]
    fn far_tail_matches_gamma_closed_form() {
        // int_0^inf a y^{a-1} e(zy) dy = Gamma(1+a) (2 pi z)^{-a} e^{i pi a / 2}
        let (k, delta) = (3u32, 1.0 / 1.05);
        let a = delta / k as f64;
        let osc = Osc { weight: Weight::I, a, k: 3.0, z: 0.75 };
        let (v, _, _) = osc.tail(0, 1e-12).unwrap();
        let exact = Complex64::from_polar(gamma(1.0 + a) * (2.0 * PI * 0.75).powf(-a), PI * a / 2.0);
        assert!((v - exact).norm() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn j_at_zero_is_log_integral() {
        for n in [10u64, 1000, 1_000_000] {
            let v = osc_integral_j(0.0, n, 1, 1.0).unwrap().value;
            let exact = li(n as f64) - li(2.0);
            assert!((v.re - exact).abs() < 1e-9 * n as f64 && v.im == 0.0);
        }
    }

    #[test]
    fn preconditions() {
        assert!(osc_integral_i(1.0, 1, 3, 0.9).is_err());
        assert!(osc_integral_i(1.0, 100, 3, 0.4).is_err());
        assert!(osc_integral_j(1.0, 8, 3, 0.9).is_err());
    }
}
