use super::{check_finite, gamma_fn, EvalResult, SERIES_MAX_TERMS, SERIES_RTOL};
use crate::{Error, Result};

/// Below this |z| the defining series is summed directly even for z < 0.
const DIRECT_NEGATIVE_LIMIT: f64 = 2.0;
/// Above this |z| (z < 0) the large-argument expansion is tried first.
const ASYMPTOTIC_LIMIT: f64 = 50.0;

/// Kummer's confluent hypergeometric function `M(a, b, z)`.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    kummer_m_eval(a, b, z).map(|r| r.value)
}

pub fn kummer_m_eval(a: f64, b: f64, z: f64) -> Result<EvalResult> {
    check_finite("a", a)?;
    check_finite("b", b)?;
    check_finite("z", z)?;
    if b <= 0.0 && b == b.round() {
        return Err(Error::Domain(format!(
            "b must not be a non-positive integer, got {b}"
        )));
    }
    if z == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0));
    }
    if z > 0.0 || -z < DIRECT_NEGATIVE_LIMIT {
        return series(a, b, z);
    }
    let zeta = -z;
    if zeta >= ASYMPTOTIC_LIMIT && b > 0.0 && b - a > 0.0 {
        if let Some(r) = asymptotic_negative(a, b, zeta)? {
            return Ok(r);
        }
    }
    // Kummer's transformation M(a,b,-x) = exp(-x) M(b-a,b,x) turns the
    // alternating series into one of constant sign when b - a, b > 0.
    if zeta < 700.0 {
        let inner = series(b - a, b, zeta)?;
        let scale = (-zeta).exp();
        return Ok(EvalResult::new(
            scale * inner.value,
            scale * inner.est_error,
        ));
    }
    Err(Error::Domain(format!(
        "M({a}, {b}, {z}) is outside the supported parameter regime"
    )))
}

fn series(a: f64, b: f64, z: f64) -> Result<EvalResult> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        n += 1;
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 {
            break;
        }
        // Past the peak the terms shrink geometrically.
        let past_peak = nf + 1.0 > (z * (a + nf) / (b + nf)).abs();
        if past_peak && term.abs() <= SERIES_RTOL * sum.abs() {
            break;
        }
        if n >= SERIES_MAX_TERMS {
            return Err(Error::NoConvergence {
                iterations: n,
                last_term: term,
                partial_sum: sum,
            });
        }
    }
    Ok(EvalResult::new(
        sum,
        abs_sum * (n as f64 + 1.0) * f64::EPSILON + term.abs(),
    ))
}

// M(a,b,-x) ~ Gamma(b)/Gamma(b-a) x^-a sum_n (a)_n (1+a-b)_n / n! x^-n for
// large x; the exponentially small companion term is folded into the error.
fn asymptotic_negative(a: f64, b: f64, x: f64) -> Result<Option<EvalResult>> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let next = term * (a + nf) * (1.0 + a - b + nf) / ((nf + 1.0) * x);
        if next == 0.0 {
            break;
        }
        if next.abs() >= term.abs() {
            // Divergent before reaching full precision.
            if term.abs() > SERIES_RTOL * sum.abs() {
                return Ok(None);
            }
            break;
        }
        term = next;
        sum += term;
        n += 1;
        if term.abs() <= SERIES_RTOL * sum.abs() {
            break;
        }
    }
    let prefactor = gamma_fn(b)? / gamma_fn(b - a)? * x.powf(-a);
    let value = prefactor * sum;
    let companion = if a > 0.0 {
        gamma_fn(b)? / gamma_fn(a)? * (-x).exp() * x.powf(a - b)
    } else {
        f64::INFINITY
    };
    if !companion.is_finite() {
        return Ok(None);
    }
    Ok(Some(EvalResult::new(
        value,
        (prefactor * term).abs() + companion + value.abs() * 4.0 * f64::EPSILON,
    )))
}
