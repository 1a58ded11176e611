//! Directed-rounding enclosures of `base^e` on top of MPFR.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Closed interval `[lo, hi]` guaranteed to contain `base^e`.
#[derive(Debug, Clone)]
pub(crate) struct Enclosure {
    pub lo: Float,
    pub hi: Float,
}

impl Enclosure {
    pub fn midpoint(&self) -> Float {
        let prec = self.lo.prec().max(self.hi.prec());
        Float::with_val(prec, &self.lo + &self.hi) / 2u32
    }
}

/// Encloses `base^e = exp(e * ln base)` for `base >= 1`, `e > 0`.
pub(crate) fn pow_enclosure(base: u64, e: &Rational, prec: u32) -> Enclosure {
    debug_assert!(base >= 1 && *e > 0);
    // ln(base) >= 0 and e > 0, so products of lower (upper) ends stay ordered.
    let mut ln_lo = Float::with_val(prec, base);
    ln_lo.ln_round(Round::Down);
    let mut ln_hi = Float::with_val(prec, base);
    ln_hi.ln_round(Round::Up);
    let (e_lo, _) = Float::with_val_round(prec, e, Round::Down);
    let (e_hi, _) = Float::with_val_round(prec, e, Round::Up);
    let (mut lo, _) = Float::with_val_round(prec, &ln_lo * &e_lo, Round::Down);
    let (mut hi, _) = Float::with_val_round(prec, &ln_hi * &e_hi, Round::Up);
    lo.exp_round(Round::Down);
    hi.exp_round(Round::Up);
    Enclosure { lo, hi }
}

/// `base^e` when it is an integer, `None` otherwise.
///
/// With `e = p/q` in lowest terms and `base >= 2`, `base^e` is integral only
/// when `base` is a perfect `q`-th power, which forces `q < 64`.
pub(crate) fn exact_integer_power(base: u64, e: &Rational) -> Option<Integer> {
    if base == 1 {
        return Some(Integer::from(1));
    }
    let (p, q) = (e.numer(), e.denom());
    let q = q.to_u32().filter(|&q| q < 64)?;
    let p = p.to_u32()?;
    let b = Integer::from(base);
    let root = b.clone().root(q);
    if Integer::from((&root).pow(q)) == b {
        Some(root.pow(p))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_contains_known_values() {
        let half = Rational::from((3, 2));
        let enc = pow_enclosure(3, &half, 96);
        // 3^1.5 = sqrt(27)
        let lo2 = Float::with_val(200, &enc.lo * &enc.lo);
        let hi2 = Float::with_val(200, &enc.hi * &enc.hi);
        assert!(lo2 <= 27 && hi2 >= 27);
        assert!(Float::with_val(96, &enc.hi - &enc.lo) < 1e-20);
    }

    #[test]
    fn exact_powers() {
        let c = Rational::from((3, 2));
        assert_eq!(exact_integer_power(4, &c), Some(Integer::from(8)));
        assert_eq!(exact_integer_power(9, &c), Some(Integer::from(27)));
        assert_eq!(exact_integer_power(5, &c), None);
        let d = Rational::from((2, 3));
        assert_eq!(exact_integer_power(8, &d), Some(Integer::from(4)));
        assert_eq!(exact_integer_power(27, &d), Some(Integer::from(9)));
        let c = Rational::from((11, 10));
        assert_eq!(exact_integer_power(1024, &c), Some(Integer::from(2048)));
        let huge_denominator = Rational::from((Integer::from(1), Integer::from(1) << 70u32)) + 1u32;
        assert_eq!(exact_integer_power(1 << 40, &huge_denominator), None);
    }
}
