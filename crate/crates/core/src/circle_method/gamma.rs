//! Gamma function (Lanczos, g = 7, nine terms) and the logarithmic integral.

use std::f64::consts::PI;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(x)` for real `x`, with the reflection formula below `1/2`.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = COEFFS[0];
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = COEFFS[0];
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + G + 0.5;
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `li(x) = gamma + ln ln x + sum_{n>=1} (ln x)^n / (n n!)` for `x > 1`.
pub fn li(x: f64) -> f64 {
    assert!(x > 1.0, "li needs x > 1");
    let l = x.ln();
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..1000 {
        term *= l / n as f64;
        let add = term / n as f64;
        sum += add;
        if add < 1e-17 * sum {
            break;
        }
    }
    EULER_GAMMA + l.ln() + sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_values() {
        let mut fact = 1.0;
        for n in 1..20 {
            assert!((gamma(n as f64) / fact - 1.0).abs() < 1e-13, "{n}");
            fact *= n as f64;
        }
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((ln_gamma(100.0) - 359.134_205_369_575_4).abs() < 1e-10);
    }

    #[test]
    fn reflection() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let lhs = gamma(x) * gamma(1.0 - x);
            let rhs = PI / (PI * x).sin();
            assert!((lhs / rhs - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn li_values() {
        // li(2) = 1.04516378011749278...
        assert!((li(2.0) - 1.045_163_780_117_492_8).abs() < 1e-13);
        // li(10^6) = 78627.5491594622...
        assert!((li(1e6) / 78_627.549_159_462_2 - 1.0).abs() < 1e-13);
    }
}
