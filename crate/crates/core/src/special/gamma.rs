use super::check_finite;
use crate::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

fn check_positive(x: f64) -> Result<()> {
    check_finite("x", x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("argument must be positive, got {x}")));
    }
    Ok(())
}

// Lanczos sum for x >= 1/2; returns (t, series) with t = x + g - 1/2.
fn lanczos_parts(x: f64) -> (f64, f64) {
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        a += p / (x + i as f64);
    }
    (x + LANCZOS_G + 0.5, a)
}

/// The Gamma function for positive arguments.
pub fn gamma_fn(x: f64) -> Result<f64> {
    check_positive(x)?;
    if x < 0.5 {
        // Reflection keeps the Lanczos sum on its accurate half-line.
        return Ok(PI / ((PI * x).sin() * gamma_fn(1.0 - x)?));
    }
    if x > 171.6 {
        return Ok(f64::INFINITY);
    }
    let (t, a) = lanczos_parts(x);
    Ok((2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * a)
}

/// `ln Gamma(x)` for positive arguments.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let (t, a) = lanczos_parts(x);
    Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + a.ln())
}

/// The digamma function `psi(x) = Gamma'(x)/Gamma(x)` for positive arguments.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli-number asymptotic tail.
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32_760.0)))));
    Ok(shift + x.ln() - 0.5 / x - tail)
}
