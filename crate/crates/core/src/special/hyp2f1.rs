use super::{check_finite, digamma, gamma_fn, EvalResult, SERIES_MAX_TERMS, SERIES_RTOL};
use crate::{Error, Result};

/// Gauss hypergeometric function `F(a, b; c; x)` for `x` in `[0, 1]`.
///
/// The hypergeometric series is summed for `x <= 1/2`. Above that the
/// argument is mapped to `1 - x` with the logarithmic linear transformation
/// valid when `m = c - a - b` is a positive integer, which is the only
/// regime the coherence-tail formula needs.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    gauss_2f1_eval(a, b, c, x).map(|r| r.value)
}

pub fn gauss_2f1_eval(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        check_finite(name, v)?;
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, 1], got {x}")));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::Domain(format!(
            "c must not be a non-positive integer, got {c}"
        )));
    }
    if x <= 0.5 {
        series_branch(a, b, c, x)
    } else {
        transform_branch(a, b, c, x)
    }
}

pub(crate) fn series_branch(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        n += 1;
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 || term.abs() <= SERIES_RTOL * sum.abs() {
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

/// Linear transformation to `1 - x` for integer `m = c - a - b >= 1`:
///
/// ```text
/// F = G(m) G(c) / (G(a+m) G(b+m)) sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) y^n
///   + (-1)^(m+1) y^m G(c) / (G(a) G(b)) sum_n (a+m)_n (b+m)_n / (n! (n+m)!) y^n
///       * [ln y - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
/// ```
/// with `y = 1 - x` and `G` the Gamma function.
pub(crate) fn transform_branch(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    let excess = c - a - b;
    let m = excess.round();
    if (excess - m).abs() > 1e-12 || m < 1.0 {
        return Err(Error::Domain(format!(
            "x > 1/2 requires c - a - b to be a positive integer, got {excess}"
        )));
    }
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::Domain(format!(
            "x > 1/2 requires a, b > 0, got a={a}, b={b}"
        )));
    }
    let m_int = m as usize;
    let y = 1.0 - x;
    let gc = gamma_fn(c)?;

    let mut finite = 0.0;
    let mut t = 1.0f64;
    for n in 0..m_int {
        let nf = n as f64;
        finite += t;
        t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - m + nf)) * y;
    }
    finite *= gamma_fn(m)? * gc / (gamma_fn(a + m)? * gamma_fn(b + m)?);

    if y == 0.0 {
        return Ok(EvalResult::new(finite, finite.abs() * 8.0 * f64::EPSILON));
    }

    let ln_y = y.ln();
    let mut psi_n1 = digamma(1.0)?;
    let mut psi_nm1 = digamma(m + 1.0)?;
    let mut psi_a = digamma(a + m)?;
    let mut psi_b = digamma(b + m)?;
    let mut coef = 1.0 / gamma_fn(m + 1.0)?;
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut n = 0usize;
    let mut last;
    loop {
        let nf = n as f64;
        let term = coef * (ln_y - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        abs_sum += term.abs();
        last = term;
        if n > 0 && term.abs() <= SERIES_RTOL * sum.abs() {
            break;
        }
        if n >= SERIES_MAX_TERMS {
            return Err(Error::NoConvergence {
                iterations: n,
                last_term: term,
                partial_sum: sum,
            });
        }
        coef *= (a + m + nf) * (b + m + nf) / ((nf + 1.0) * (nf + m + 1.0)) * y;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + m + 1.0);
        psi_a += 1.0 / (a + m + nf);
        psi_b += 1.0 / (b + m + nf);
        n += 1;
    }
    let sign = if m_int % 2 == 1 { 1.0 } else { -1.0 };
    let pref = sign * y.powi(m_int as i32) * gc / (gamma_fn(a)? * gamma_fn(b)?);
    let value = finite + pref * sum;
    let err = (pref * abs_sum).abs() * (n as f64 + 4.0) * f64::EPSILON
        + (pref * last).abs()
        + finite.abs() * 8.0 * f64::EPSILON;
    Ok(EvalResult::new(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{c1, K};

    #[test]
    fn zero_argument() {
        assert_eq!(gauss_2f1(0.3, 0.4, 1.9, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn gauss_sum_at_one() {
        let v = gauss_2f1(K, K, 1.0 + 2.0 * K, 1.0).unwrap();
        assert!((v - 1.0 / c1()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn elementary_log_case() {
        // F(1, 1; 2; x) = -ln(1-x)/x, with c - a - b = 0 (unsupported above 1/2)
        let x: f64 = 0.3;
        let want = -(1.0 - x).ln() / x;
        assert!((gauss_2f1(1.0, 1.0, 2.0, x).unwrap() - want).abs() < 1e-14);
        assert!(gauss_2f1(1.0, 1.0, 2.0, 0.8).is_err());
        // F(1/2, 1; 5/2; x) has c - a - b = 1; compare the branches directly.
        let s = series_branch(0.5, 1.0, 2.5, 0.7).unwrap().value;
        let t = transform_branch(0.5, 1.0, 2.5, 0.7).unwrap().value;
        assert!((s - t).abs() < 1e-12, "{s} vs {t}");
    }

    #[test]
    fn second_order_integer_gap() {
        let (a, b, c) = (0.4, 0.9, 3.3);
        for &x in &[0.55, 0.7, 0.8] {
            let s = series_branch(a, b, c, x).unwrap().value;
            let t = transform_branch(a, b, c, x).unwrap().value;
            assert!((s - t).abs() < 1e-12, "x={x}: {s} vs {t}");
        }
    }

    #[test]
    fn continuous_across_method_switch() {
        let (a, b, c) = (K, K, 1.0 + 2.0 * K);
        for i in 0..=20 {
            let x = 0.45 + 0.005 * i as f64;
            let s = series_branch(a, b, c, x).unwrap().value;
            let t = transform_branch(a, b, c, x).unwrap().value;
            assert!((s - t).abs() < 1e-9, "x={x}: {s} vs {t}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(gauss_2f1(0.5, 0.5, 2.0, 1.2).is_err());
        assert!(gauss_2f1(0.5, 0.5, 2.0, -0.1).is_err());
        assert!(gauss_2f1(0.5, 0.5, -1.0, 0.1).is_err());
    }
}
