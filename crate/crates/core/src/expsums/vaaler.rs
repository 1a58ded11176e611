//! Trigonometric approximation of the sawtooth `psi(x) = x - floor(x) - 1/2`.
//!
//! Coefficients follow the Graham-Kolesnik construction. With
//! `Phi(t) = pi t (1 - |t|) cot(pi t) + |t|` and `1 <= |h| <= H`:
//!
//! ```text
//! a_h = -Phi(h / (H+1)) / (2 pi i h)
//! psi*(x) = sum a_h e(hx) = -sum_{h=1}^{H} Phi(h/(H+1)) sin(2 pi h x) / (pi h)
//! b_h = (1 - |h|/(H+1)) / (2H + 2),   |h| <= H
//! ```
//!
//! and `|psi(x) - psi*(x)| <= sum_{|h|<=H} b_h e(hx)`, a nonnegative Fejer
//! kernel scaled by `1/(2H+2)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub fn psi(x: f64) -> f64 {
    x - x.floor() - 0.5
}

fn big_phi(t: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        return 1.0;
    }
    PI * t * (1.0 - t) / (PI * t).tan() + t
}

#[derive(Debug, Clone, Serialize)]
pub struct VaalerPolynomial {
    pub h: u32,
    /// `a_1, ..., a_H`; `a_{-h}` is the conjugate.
    pub coeffs_a: Vec<Complex64>,
    /// `b_0, ..., b_H`; `b_{-h} = b_h`.
    pub coeffs_b: Vec<f64>,
}

pub fn build_vaaler(h: u32) -> Result<VaalerPolynomial> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("H must be >= 2, got {h}")));
    }
    let h1 = (h + 1) as f64;
    let coeffs_a = (1..=h)
        .map(|j| {
            let j = j as f64;
            // -Phi / (2 pi i j) = i Phi / (2 pi j)
            Complex64::new(0.0, big_phi(j / h1) / (TAU * j))
        })
        .collect();
    let coeffs_b = (0..=h)
        .map(|j| (1.0 - j as f64 / h1) / (2.0 * h1))
        .collect();
    Ok(VaalerPolynomial { h, coeffs_a, coeffs_b })
}

impl VaalerPolynomial {
    pub fn a(&self, h: i64) -> Complex64 {
        match h {
            0 => Complex64::new(0.0, 0.0),
            h if h > 0 => self.coeffs_a[h as usize - 1],
            h => self.coeffs_a[(-h) as usize - 1].conj(),
        }
    }

    pub fn psi_star(&self, x: f64) -> f64 {
        self.coeffs_a
            .iter()
            .enumerate()
            .map(|(j, a)| -2.0 * a.im * (TAU * (j + 1) as f64 * x).sin())
            .sum()
    }

    pub fn envelope(&self, x: f64) -> f64 {
        self.coeffs_b[0]
            + self.coeffs_b[1..]
                .iter()
                .enumerate()
                .map(|(j, b)| 2.0 * b * (TAU * (j + 1) as f64 * x).cos())
                .sum::<f64>()
    }

    /// `max_h |h a_h|`.
    pub fn max_h_times_a(&self) -> f64 {
        self.coeffs_a
            .iter()
            .enumerate()
            .map(|(j, a)| (j + 1) as f64 * a.norm())
            .fold(0.0, f64::max)
    }

    /// `max_h H b_h`.
    pub fn max_big_h_times_b(&self) -> f64 {
        self.coeffs_b.iter().fold(0.0, |m, b| m.max(self.h as f64 * b))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VaalerCheck {
    pub h: u32,
    pub grid_points: u64,
    pub sup_error: f64,
    pub sup_error_times_h: f64,
    pub argmax_x: f64,
    pub envelope_violations: u64,
    pub max_envelope_excess: f64,
    pub max_h_times_a: f64,
    pub max_big_h_times_b: f64,
}

/// Evaluates `psi - psi*` and the envelope on `x_j = j / points`.
pub fn vaaler_check(h: u32, points: u64) -> Result<VaalerCheck> {
    if points == 0 {
        return Err(Error::InvalidParameter("grid needs at least one point".into()));
    }
    let poly = build_vaaler(h)?;
    let mut sup = 0.0f64;
    let mut argmax = 0.0;
    let mut violations = 0;
    let mut excess = f64::NEG_INFINITY;
    for j in 0..points {
        let x = j as f64 / points as f64;
        let err = (psi(x) - poly.psi_star(x)).abs();
        let env = poly.envelope(x);
        if err > sup {
            sup = err;
            argmax = x;
        }
        excess = excess.max(err - env);
        if err > env + 1e-12 {
            violations += 1;
        }
    }
    Ok(VaalerCheck {
        h,
        grid_points: points,
        sup_error: sup,
        sup_error_times_h: sup * h as f64,
        argmax_x: argmax,
        envelope_violations: violations,
        max_envelope_excess: excess,
        max_h_times_a: poly.max_h_times_a(),
        max_big_h_times_b: poly.max_big_h_times_b(),
    })
}
