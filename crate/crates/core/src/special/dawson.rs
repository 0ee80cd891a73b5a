use super::{check_finite, EvalResult, SERIES_MAX_TERMS, SERIES_RTOL};
use crate::{Error, Result};

/// Argument above which the asymptotic expansion reaches full double precision.
const ASYMPTOTIC_SWITCH: f64 = 6.0;

/// Dawson's integral `F(z) = exp(-z^2) * int_0^z exp(y^2) dy`.
///
/// Defined for all finite real `z` (it is odd).
pub fn dawson(z: f64) -> Result<f64> {
    dawson_eval(z).map(|r| r.value)
}

pub fn dawson_eval(z: f64) -> Result<EvalResult> {
    check_finite("z", z)?;
    let x = z.abs();
    let r = if x < ASYMPTOTIC_SWITCH {
        positive_series(x)?
    } else {
        asymptotic(x)?
    };
    Ok(EvalResult::new(r.value.copysign(z), r.est_error))
}

// F(x) = exp(-x^2) sum_n x^(2n+1) / (n! (2n+1)); every term is positive, so
// there is no cancellation even where the terms reach exp(x^2).
fn positive_series(x: f64) -> Result<EvalResult> {
    if x == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0));
    }
    let x2 = x * x;
    let mut power = x;
    let mut sum = x;
    let mut n = 0usize;
    loop {
        n += 1;
        if n > SERIES_MAX_TERMS {
            return Err(Error::NoConvergence {
                iterations: n,
                last_term: power,
                partial_sum: sum,
            });
        }
        power *= x2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if (n as f64) > x2 && term <= SERIES_RTOL * sum {
            break;
        }
    }
    let value = (-x2).exp() * sum;
    Ok(EvalResult::new(
        value,
        value * (n as f64 + 2.0) * f64::EPSILON,
    ))
}

// F(x) ~ 1/(2x) sum_n (2n-1)!! / (2x^2)^n, truncated at the smallest term.
fn asymptotic(x: f64) -> Result<EvalResult> {
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0f64;
    let mut sum = 1.0;
    let mut n = 0usize;
    loop {
        n += 1;
        let next = term * (2 * n - 1) as f64 * inv;
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term <= SERIES_RTOL * sum {
            break;
        }
    }
    let scale = 0.5 / x;
    Ok(EvalResult::new(
        scale * sum,
        scale * (term + sum * 2.0 * f64::EPSILON),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(dawson(0.0).unwrap(), 0.0);
    }

    #[test]
    fn odd_symmetry() {
        for &z in &[0.3, 2.0, 7.5] {
            assert_eq!(dawson(-z).unwrap(), -dawson(z).unwrap());
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        let a = positive_series(ASYMPTOTIC_SWITCH).unwrap().value;
        let b = asymptotic(ASYMPTOTIC_SWITCH).unwrap().value;
        assert!(((a - b) / a).abs() < 1e-14, "{a} vs {b}");
    }

    #[test]
    fn limits() {
        assert!((dawson(1e-6).unwrap() - 1e-6).abs() < 1e-17);
        let z = 1e4;
        assert!((dawson(z).unwrap() * 2.0 * z - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_nan() {
        assert!(dawson(f64::NAN).is_err());
        assert!(dawson(f64::INFINITY).is_err());
    }
}
