use std::f64::consts::TAU;

use num_complex::Complex64;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

const TWO_POW_128: f64 = 340_282_366_920_938_463_463_374_607_431_768_211_456.0;

/// A point of `R/Z` stored as `round_down(x * 2^128)`.
///
/// Multiplying by an integer `m` is a wrapping `u128` product with
/// `m mod 2^128`, which is exact in `R/Z` for the stored value. This keeps
/// `alpha n^k mod 1` accurate long after `n^k` has left the range of `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Frac128(pub u128);

impl Frac128 {
    pub const ZERO: Frac128 = Frac128(0);

    /// Reduces a finite `f64` mod 1 without rounding.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("phase {x} is not finite")));
        }
        let r = Rational::from_f64(x).expect("finite");
        Ok(Self::from_rational(&r))
    }

    /// `floor(frac(r) * 2^128)`.
    pub fn from_rational(r: &Rational) -> Self {
        let frac = Rational::from(r - Rational::from(r.floor_ref()));
        let scaled = Integer::from(frac.numer() << 128u32) / frac.denom();
        Frac128(scaled.to_u128().expect("fraction below one"))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / TWO_POW_128
    }

    /// `self * m mod 1` for `m` given mod `2^128`.
    #[inline]
    pub fn mul_int(self, m: u128) -> Self {
        Frac128(self.0.wrapping_mul(m))
    }

    #[inline]
    pub fn add(self, other: Self) -> Self {
        Frac128(self.0.wrapping_add(other.0))
    }

    #[inline]
    pub fn neg(self) -> Self {
        Frac128(self.0.wrapping_neg())
    }

    /// `e(x) = exp(2 pi i x)`.
    #[inline]
    pub fn cis(self) -> Complex64 {
        // Centre on (-1/2, 1/2] so the f64 argument stays small.
        let signed = self.0 as i128 as f64 / TWO_POW_128;
        let (s, c) = (TAU * signed).sin_cos();
        Complex64::new(c, s)
    }
}

/// `n^k mod 2^128`.
#[inline]
pub fn pow_wrapping(n: u64, k: u32) -> u128 {
    (n as u128).wrapping_pow(k)
}

/// `e(x)` for a real `x`.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * (x - x.round())).sin_cos();
    Complex64::new(c, s)
}
