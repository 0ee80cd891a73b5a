//! Special functions needed by the closed-form strong-coupling theory.
//!
//! Everything here is real-valued and evaluated in double precision. Each
//! routine has an `*_eval` variant that also returns an absolute error
//! estimate.

mod dawson;
mod gamma;
mod hyp2f1;
mod kummer;

pub use dawson::{dawson, dawson_eval};
pub use gamma::{digamma, gamma_fn, ln_gamma};
pub use hyp2f1::{gauss_2f1, gauss_2f1_eval};
pub use kummer::{kummer_m, kummer_m_eval};

/// A value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub est_error: f64,
}

impl EvalResult {
    pub(crate) fn new(value: f64, est_error: f64) -> Self {
        Self {
            value,
            est_error: est_error.abs(),
        }
    }
}

/// Relative size at which a series term is considered negligible.
pub(crate) const SERIES_RTOL: f64 = 1e-16;
/// Hard cap on the number of series terms.
pub(crate) const SERIES_MAX_TERMS: usize = 100_000;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponent `k = 1/sqrt(2)` of the long-time coherence decay `exp(-2 k nu t)`.
pub const K: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `C0 = 5/3 - gamma/2`, the constant in the intermediate-time coherence law.
pub fn c0() -> f64 {
    5.0 / 3.0 - EULER_GAMMA / 2.0
}

/// `C1 = Gamma(1+k)^2 / Gamma(1+2k)`, amplitude of the long-time tail.
pub fn c1() -> f64 {
    let g = gamma_fn(1.0 + K).expect("positive argument");
    g * g / gamma_fn(1.0 + 2.0 * K).expect("positive argument")
}

/// `C2 = Gamma(1+k) / Gamma(1+2k)`, normalisation of the radial profile.
pub fn c2() -> f64 {
    gamma_fn(1.0 + K).expect("positive argument")
        / gamma_fn(1.0 + 2.0 * K).expect("positive argument")
}

/// `C3 = 1 + 2k - 2 psi(1+k) - 2 gamma - ln 2`.
pub fn c3() -> f64 {
    1.0 + 2.0 * K
        - 2.0 * digamma(1.0 + K).expect("positive argument")
        - 2.0 * EULER_GAMMA
        - std::f64::consts::LN_2
}

pub(crate) fn check_finite(name: &str, x: f64) -> crate::Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::Domain(format!(
            "{name} must be finite, got {x}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_quoted_values() {
        assert!((c1() - 0.66).abs() < 0.005, "C1 = {}", c1());
        assert!((c0() - 1.38).abs() < 0.005, "C0 = {}", c0());
        assert!((c3() - 0.14).abs() < 0.005, "C3 = {}", c3());
    }

    #[test]
    fn c1_is_c2_times_gamma() {
        let via_c2 = c2() * gamma_fn(1.0 + K).unwrap();
        assert!((via_c2 - c1()).abs() < 1e-15);
    }
}
