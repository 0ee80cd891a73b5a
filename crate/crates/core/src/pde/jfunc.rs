use crate::field::FieldParams;
use crate::theory::n_static;
use crate::{Error, RelaxationCurve, Result};

/// Largest `nu/omega0` for which the factorisation `N = N_st J` is used.
pub const MAX_COUPLING_RATIO: f64 = 0.05;
/// Default level: around each zero of `N_st`, the connected stretch where
/// `|N_st| < level` is dropped.
pub const DEFAULT_ZERO_LEVEL: f64 = 0.1;

/// `J(alpha t)` sampled on the kept points.
#[derive(Debug, Clone)]
pub struct JExtraction {
    /// Abscissa is `alpha t`.
    pub curve: RelaxationCurve,
    /// Times that were dropped for being too close to a zero of `N_st`.
    pub dropped: Vec<f64>,
}

impl JExtraction {
    /// Linear interpolation at `alpha t = x`; `None` outside the kept range
    /// or across a dropped stretch.
    pub fn at(&self, x: f64, alpha: f64) -> Option<f64> {
        let xs = &self.curve.times;
        let j = xs.partition_point(|&v| v < x);
        if j < xs.len() && xs[j] == x {
            return Some(self.curve.values[j]);
        }
        if j == 0 || j == xs.len() {
            return None;
        }
        let (a, b) = (xs[j - 1], xs[j]);
        if self.dropped.iter().any(|&t| alpha * t > a && alpha * t < b) {
            return None;
        }
        let w = (x - a) / (b - a);
        Some(self.curve.values[j - 1] * (1.0 - w) + self.curve.values[j] * w)
    }
}

/// Stretches `(lo, hi)`, in `omega0 t`, around each zero of `N_st` on
/// `(0, t_max]` where `|N_st| < level`.
pub fn n_static_zero_neighbourhoods(t_max: f64, level: f64) -> Vec<(f64, f64)> {
    let edge = |from: f64, dir: f64| {
        // walk outward until |N_st| >= level, then bisect
        let step = 0.01;
        let mut t = from;
        while n_static(t + dir * step).abs() < level && t + dir * step > 0.0 {
            t += dir * step;
            if t > t_max + 1.0 {
                return t;
            }
        }
        let (mut a, mut b) = (t, (t + dir * step).max(0.0));
        for _ in 0..50 {
            let m = 0.5 * (a + b);
            if n_static(m).abs() < level {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    n_static_zeros(t_max)
        .into_iter()
        .map(|z| (edge(z, -1.0), edge(z, 1.0)))
        .collect()
}

/// Zeros of `N_st(omega0 t)` on `(0, t_max]`, in units of `1/omega0`.
pub fn n_static_zeros(t_max: f64) -> Vec<f64> {
    let step = 0.01;
    let n = (t_max / step).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev = (0.0, 1.0);
    for i in 1..=n {
        let t = (i as f64 * step).min(t_max);
        let v = n_static(t);
        if v == 0.0 {
            zeros.push(t);
        } else if prev.1 * v < 0.0 {
            let (mut lo, mut hi) = (prev.0, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if n_static(mid) * n_static(lo) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        prev = (t, v);
    }
    zeros
}

/// `J(alpha t) = N(t) / N_st(t)` with the default zero level.
pub fn extract_j(params: &FieldParams, n_curve: &RelaxationCurve) -> Result<JExtraction> {
    extract_j_with_level(params, n_curve, DEFAULT_ZERO_LEVEL)
}

pub fn extract_j_with_level(
    params: &FieldParams,
    n_curve: &RelaxationCurve,
    level: f64,
) -> Result<JExtraction> {
    let w0 = params.omega0();
    if params.nu() > MAX_COUPLING_RATIO * w0 {
        return Err(Error::InvalidParameter(format!(
            "nu/omega0 = {} is outside the strong-coupling range (<= {MAX_COUPLING_RATIO})",
            params.nu() / w0
        )));
    }
    let t_end = n_curve.times.last().copied().unwrap_or(0.0) * w0;
    let zones = n_static_zero_neighbourhoods(t_end, level);
    let alpha = params.alpha();
    let (mut x, mut y, mut dropped) = (Vec::new(), Vec::new(), Vec::new());
    for (t, n, _) in n_curve.points() {
        let s = w0 * t;
        let reference = n_static(s);
        if reference == 0.0 || zones.iter().any(|&(lo, hi)| s > lo && s < hi) {
            dropped.push(t);
            continue;
        }
        x.push(alpha * t);
        y.push(n / reference);
    }
    Ok(JExtraction {
        curve: RelaxationCurve::new(x, y)?,
        dropped,
    })
}
