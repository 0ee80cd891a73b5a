//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// Piecewise adaptive quadrature over `[a, b]` split into `pieces` panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, tol: f64) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = a + i as f64 * h;
            adaptive_simpson(&f, lo, lo + h, tol / pieces as f64)
        })
        .sum()
}

/// Kahan-compensated sum of `term(n)` for `n = 0, 1, ...` until the terms
/// stay below `rtol` of the partial sum for several consecutive terms.
pub fn series<F: FnMut(usize) -> f64>(mut term: F, rtol: f64, max_terms: usize) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut small = 0;
    for n in 0..max_terms {
        let t = term(n);
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if t.abs() <= rtol * sum.abs() {
            small += 1;
            if small >= 4 {
                return sum;
            }
        } else {
            small = 0;
        }
    }
    panic!("oracle series did not converge in {max_terms} terms");
}

/// Coarse scan of `f` on `[a, b]` followed by golden-section refinement of
/// the best bracket; returns `(x, f(x))` at the maximum.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, scan: usize) -> (f64, f64) {
    let h = (b - a) / scan as f64;
    let best = (0..=scan)
        .max_by(|&i, &j| f(a + i as f64 * h).total_cmp(&f(a + j as f64 * h)))
        .unwrap();
    let mut lo = (a + (best as f64 - 1.0) * h).max(a);
    let mut hi = (a + (best as f64 + 1.0) * h).min(b);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, scan: usize) -> (f64, f64) {
    let (x, v) = golden_max(|x| -f(x), a, b, scan);
    (x, -v)
}

/// Bisection root of `f` on a sign-changing bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) <= 0.0, "bracket does not change sign");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Mean and standard error of a sample.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Upper-tail chi-square critical value at significance `p` via the
/// Wilson-Hilferty approximation (accurate to a few percent for dof >= 10).
pub fn chi2_critical(dof: usize, z_p: f64) -> f64 {
    let k = dof as f64;
    let a = 2.0 / (9.0 * k);
    k * (1.0 - a + z_p * a.sqrt()).powi(3)
}
