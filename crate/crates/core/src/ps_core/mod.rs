//! Exact arithmetic for Piatetski-Shapiro sequences.
//!
//! The sequence is `H_c = { floor(m^c) : m >= 1 }` with `1 < c < 2`, and
//! `delta = 1/c`. The exponent is held as an exact rational (parsed from its
//! decimal literal), so `delta` is exact too and the two characterizations
//!
//! ```text
//! n in H_c  <=>  n = floor(m^c) for some m
//!           <=>  floor(-n^delta) - floor(-(n+1)^delta) = 1
//! ```
//!
//! can be checked against each other without any rounding of `c`.
//!
//! Floors are certified: `m^e` is enclosed with directed rounding at
//! `base_precision_bits`, doubling up to `max_precision_bits`, until the
//! enclosure holds no integer. If it still contains one, the value is tested
//! for being exactly that integer (possible for rational `e`, e.g.
//! `4^{3/2} = 8`) before giving up with [`Error::PrecisionExhausted`].

mod interval;

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition;
use crate::primes;
use crate::rational::{parse_exact, to_fraction_string};

use interval::{exact_integer_power, pow_enclosure};

/// Environment override for the precision cap.
pub const MAX_PRECISION_ENV: &str = "PS_LAB_MAX_PRECISION_BITS";

#[derive(Debug, Clone, PartialEq)]
pub struct PsParams {
    c: Rational,
    delta: Rational,
    pub base_precision_bits: u32,
    pub max_precision_bits: u32,
}

impl PsParams {
    pub const DEFAULT_BASE_BITS: u32 = 96;
    pub const DEFAULT_MAX_BITS: u32 = 4096;

    /// Parses `c` from a decimal or fraction literal, e.g. `"1.05"`.
    pub fn new(c: &str) -> Result<Self> {
        Self::from_rational(parse_exact(c)?)
    }

    pub fn from_rational(c: Rational) -> Result<Self> {
        if c <= 1 || c >= 2 {
            return Err(Error::InvalidParameter(format!(
                "c must satisfy 1 < c < 2, got {}",
                to_fraction_string(&c)
            )));
        }
        let delta = Rational::from(c.recip_ref());
        Ok(Self {
            c,
            delta,
            base_precision_bits: Self::DEFAULT_BASE_BITS,
            max_precision_bits: Self::DEFAULT_MAX_BITS,
        })
    }

    pub fn with_precision(mut self, base_bits: u32, max_bits: u32) -> Result<Self> {
        if base_bits < 32 || base_bits > max_bits {
            return Err(Error::InvalidParameter(format!(
                "precision needs 32 <= base ({base_bits}) <= max ({max_bits})"
            )));
        }
        self.base_precision_bits = base_bits;
        self.max_precision_bits = max_bits;
        Ok(self)
    }

    /// Applies [`MAX_PRECISION_ENV`] if set.
    pub fn with_env_overrides(self) -> Result<Self> {
        match std::env::var(MAX_PRECISION_ENV) {
            Ok(v) => {
                let max: u32 = v.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("{MAX_PRECISION_ENV}={v:?} is not an integer"))
                })?;
                let base = self.base_precision_bits.min(max);
                self.with_precision(base, max)
            }
            Err(_) => Ok(self),
        }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn c_f64(&self) -> f64 {
        self.c.to_f64()
    }

    pub fn delta_f64(&self) -> f64 {
        self.delta.to_f64()
    }

    pub fn c_string(&self) -> String {
        to_fraction_string(&self.c)
    }
}

/// `floor(m^e)` together with the precision that certified it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertifiedFloor {
    pub value: u128,
    pub precision_used_bits: u32,
}

#[derive(Debug, Clone)]
struct Certified {
    floor: Integer,
    exact: bool,
    bits: u32,
    approx: Float,
}

impl Certified {
    fn ceil(&self) -> Integer {
        if self.exact {
            self.floor.clone()
        } else {
            Integer::from(&self.floor + 1u32)
        }
    }
}

fn certify(base: u64, e: &Rational, params: &PsParams) -> Result<Certified> {
    if base == 0 {
        return Err(Error::InvalidParameter("base must be >= 1".into()));
    }
    if base == 1 {
        return Ok(Certified {
            floor: Integer::from(1),
            exact: true,
            bits: params.base_precision_bits,
            approx: Float::with_val(params.base_precision_bits, 1),
        });
    }
    let mut prec = params.base_precision_bits;
    let mut exact: Option<Option<Integer>> = None;
    loop {
        let enc = pow_enclosure(base, e, prec);
        let lo = enc.lo.to_integer_round(rug::float::Round::Down).map(|(i, _)| i);
        let hi = enc.hi.to_integer_round(rug::float::Round::Down).map(|(i, _)| i);
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::InvalidParameter("non-finite power".into())),
        };
        if lo == hi {
            return Ok(Certified {
                floor: lo,
                exact: enc.lo == enc.hi,
                bits: prec,
                approx: enc.midpoint(),
            });
        }
        if hi == Integer::from(&lo + 1u32) {
            let ex = exact.get_or_insert_with(|| exact_integer_power(base, e));
            if ex.as_ref() == Some(&hi) {
                return Ok(Certified {
                    floor: hi.clone(),
                    exact: true,
                    bits: prec,
                    approx: Float::with_val(prec, &hi),
                });
            }
        }
        if prec >= params.max_precision_bits {
            return Err(Error::PrecisionExhausted {
                base,
                exponent: to_fraction_string(e),
                bits: prec,
            });
        }
        prec = (prec * 2).min(params.max_precision_bits);
    }
}

/// Exact `floor(m^e)` for `m >= 1` and rational `e > 0`.
pub fn floor_pow(m: u64, e: &Rational, params: &PsParams) -> Result<CertifiedFloor> {
    if *e <= 0 {
        return Err(Error::InvalidParameter("exponent must be positive".into()));
    }
    let cert = certify(m, e, params)?;
    let value = cert
        .floor
        .to_u128()
        .ok_or_else(|| Error::Overflow(format!("floor({m}^e) exceeds 128 bits")))?;
    Ok(CertifiedFloor {
        value,
        precision_used_bits: cert.bits,
    })
}

/// `floor(m^c)` as `u64`.
pub fn floor_pow_c(m: u64, params: &PsParams) -> Result<u64> {
    let v = floor_pow(m, params.c(), params)?.value;
    u64::try_from(v).map_err(|_| Error::Overflow(format!("floor({m}^c) exceeds 64 bits")))
}

/// `floor(-n^delta) = -ceil(n^delta)`.
pub fn floor_neg_pow_delta(n: u64, params: &PsParams) -> Result<i128> {
    let cert = certify(n, params.delta(), params)?;
    let ceil = cert
        .ceil()
        .to_i128()
        .ok_or_else(|| Error::Overflow("ceil(n^delta) exceeds 128 bits".into()))?;
    Ok(-ceil)
}

/// Membership through the floor-difference characterization.
pub fn is_ps_member(n: u64, params: &PsParams) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let a = floor_neg_pow_delta(n, params)?;
    let b = floor_neg_pow_delta(n + 1, params)?;
    Ok(a - b == 1)
}

/// Membership flags for every `n` in `lo..hi`; each `floor(-n^delta)` is
/// computed once and shared between neighbours.
pub fn ps_indicator_range(lo: u64, hi: u64, params: &PsParams) -> Result<Vec<bool>> {
    if lo == 0 {
        return Err(Error::InvalidParameter("range must start at n >= 1".into()));
    }
    let mut out = Vec::with_capacity(hi.saturating_sub(lo) as usize);
    if hi <= lo {
        return Ok(out);
    }
    let mut prev = floor_neg_pow_delta(lo, params)?;
    for n in lo..hi {
        let next = floor_neg_pow_delta(n + 1, params)?;
        let diff = prev - next;
        debug_assert!(diff == 0 || diff == 1);
        out.push(diff == 1);
        prev = next;
    }
    Ok(out)
}

/// The PS integers `<= limit`, ascending.
pub fn enumerate_ps(limit: u64, params: &PsParams) -> Result<Vec<u64>> {
    enumerate_ps_partitioned(limit, params, 1)
}

/// [`enumerate_ps`] with the `m`-range split over `parts` threads.
pub fn enumerate_ps_partitioned(limit: u64, params: &PsParams, parts: usize) -> Result<Vec<u64>> {
    if limit == 0 {
        return Err(Error::InvalidParameter("limit must be >= 1".into()));
    }
    // floor(m^c) <= limit  <=>  m < (limit+1)^delta
    let m_end = floor_pow(limit.saturating_add(1), params.delta(), params)?.value as u64 + 2;
    let pieces = partition::map_chunks(1, m_end, parts, |range| -> Result<Vec<u64>> {
        let mut v = Vec::new();
        for m in range {
            let f = floor_pow_c(m, params)?;
            if f > limit {
                break;
            }
            v.push(f);
        }
        Ok(v)
    });
    let mut out = Vec::new();
    for p in pieces {
        out.extend(p?);
    }
    Ok(out)
}

/// PS primes `<= limit`.
pub fn enumerate_ps_primes(limit: u64, params: &PsParams) -> Result<Vec<u64>> {
    enumerate_ps_primes_partitioned(limit, params, 1)
}

pub fn enumerate_ps_primes_partitioned(limit: u64, params: &PsParams, parts: usize) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::InvalidParameter("limit must be >= 2".into()));
    }
    Ok(enumerate_ps_partitioned(limit, params, parts)?
        .into_iter()
        .filter(|&n| primes::is_prime(n))
        .collect())
}

/// `n^e` rounded to `f64`, via the certified enclosure.
pub fn pow_value(n: u64, e: &Rational, params: &PsParams) -> Result<f64> {
    Ok(certify(n, e, params)?.approx.to_f64())
}

/// `psi(-y)` for `y = n^delta`, with `psi(x) = x - floor(x) - 1/2`.
fn psi_neg_pow_delta(n: u64, params: &PsParams) -> Result<f64> {
    let cert = certify(n, params.delta(), params)?;
    // -y - floor(-y) = ceil(y) - y
    let frac = Float::with_val(cert.bits, cert.ceil()) - &cert.approx;
    Ok(frac.to_f64() - 0.5)
}

/// `psi(-(n+1)^delta) - psi(-n^delta)`, the fluctuating part of the PS
/// indicator: `1_{n in H} = (n+1)^delta - n^delta + delta_psi(n)`.
pub fn delta_psi(n: u64, params: &PsParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Ok(psi_neg_pow_delta(n + 1, params)? - psi_neg_pow_delta(n, params)?)
}
