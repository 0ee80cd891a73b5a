use super::RadialGrid;
use crate::field::FieldParams;
use crate::{Error, Result};

/// Tridiagonal matrix stored by diagonals. `lower[0]` and `upper[n-1]` are
/// unused.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        self.apply_into(x, &mut y);
        y
    }

    pub fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.lower[i] * x[i - 1];
            }
            if i + 1 < n {
                v += self.upper[i] * x[i + 1];
            }
            y[i] = v;
        }
    }
}

/// Discrete radial generator `L_k = L_0 - k^2 D / omega^2`.
///
/// `L_0 N = (1/omega) d/domega [omega D f d/domega (N/f)]` is discretised in
/// flux form with the density at a face taken as the geometric mean of its
/// neighbours, so the stationary density is annihilated exactly and
/// `2 pi sum N_i omega_i h` is conserved. The flux vanishes at `omega = 0`;
/// `N = 0` is imposed at `omega_max`.
pub fn build_lk(grid: &RadialGrid, k: u32, params: &FieldParams) -> Result<Tridiagonal> {
    if k > 2 {
        return Err(Error::InvalidParameter(format!(
            "k must be 0, 1 or 2, got {k}"
        )));
    }
    let n = grid.n_points();
    let h = grid.spacing();
    let d = params.diffusion();
    let w0sq = params.omega0() * params.omega0();
    let nodes = grid.nodes();
    let mut op = Tridiagonal {
        lower: vec![0.0; n],
        diag: vec![0.0; n],
        upper: vec![0.0; n],
    };
    if d == 0.0 {
        return Ok(op);
    }
    for (i, &w) in nodes.iter().enumerate() {
        let scale = d / (h * h * w);
        // face i + 1/2
        let wr = (i + 1) as f64 * h;
        if i + 1 < n {
            let x = h * wr / w0sq;
            op.upper[i] = scale * wr * x.exp();
            op.diag[i] -= scale * wr * (-x).exp();
        } else {
            // boundary value at half a cell, density ratio f(omega_max)/f(omega_i)
            let ratio = (-(0.5 * h) * (2.0 * wr - 0.5 * h) / w0sq).exp();
            op.diag[i] -= 2.0 * scale * wr * ratio;
        }
        // face i - 1/2
        if i > 0 {
            let wl = i as f64 * h;
            let x = h * wl / w0sq;
            op.lower[i] = scale * wl * (-x).exp();
            op.diag[i] -= scale * wl * x.exp();
        }
        op.diag[i] -= (k * k) as f64 * d / (w * w);
    }
    Ok(op)
}

/// Pre-factorised solver for `(I - c L) x = b`.
#[derive(Debug, Clone)]
pub(crate) struct ShiftedSolve {
    lower: Vec<f64>,
    upper_mod: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl ShiftedSolve {
    pub fn new(op: &Tridiagonal, c: f64) -> Self {
        let n = op.len();
        let lower: Vec<f64> = op.lower.iter().map(|l| -c * l).collect();
        let mut upper_mod = vec![0.0; n];
        let mut inv_pivot = vec![0.0; n];
        let mut prev = 0.0;
        for i in 0..n {
            let pivot = 1.0 - c * op.diag[i] - if i > 0 { lower[i] * prev } else { 0.0 };
            inv_pivot[i] = 1.0 / pivot;
            prev = -c * op.upper[i] * inv_pivot[i];
            upper_mod[i] = prev;
        }
        Self {
            lower,
            upper_mod,
            inv_pivot,
        }
    }

    /// Overwrite `x` (holding `b`) with the solution.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = x.len();
        x[0] *= self.inv_pivot[0];
        for i in 1..n {
            x[i] = (x[i] - self.lower[i] * x[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            x[i] -= self.upper_mod[i] * x[i + 1];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(nu: f64) -> (RadialGrid, FieldParams) {
        let p = FieldParams::resonant(nu).unwrap();
        (RadialGrid::new(6.0, 400, 1.0).unwrap(), p)
    }

    #[test]
    fn annihilates_stationary_density() {
        let (g, p) = setup(0.3);
        let f = g.stationary(&p);
        let op = build_lk(&g, 0, &p).unwrap();
        let lf = op.apply(&f);
        let n = f.len();
        for ((v, d), fi) in lf.iter().zip(&op.diag).zip(&f).take(n - 1) {
            // only rounding of the three-term sum remains
            assert!(v.abs() <= 1e-13 * (d * fi).abs(), "{v}");
        }
        // the last cell leaks through the absorbing edge, where f ~ 1e-16
        assert!(lf[n - 1].abs() < 1e-12);
    }

    #[test]
    fn matches_continuous_operator_on_smooth_profile() {
        let (g, p) = setup(1.0);
        let d = p.diffusion();
        let nu = p.nu();
        // N = omega^2 f: L_0 N = D N'' + (nu w + D / w) N' + 2 nu N
        let f = |w: f64| (-w * w).exp() / std::f64::consts::PI;
        let n = |w: f64| w * w * f(w);
        let n1 = |w: f64| (2.0 * w - 2.0 * w.powi(3)) * f(w);
        let n2 = |w: f64| (2.0 - 10.0 * w * w + 4.0 * w.powi(4)) * f(w);
        let x: Vec<f64> = g.nodes().iter().map(|&w| n(w)).collect();
        let lx = build_lk(&g, 0, &p).unwrap().apply(&x);
        for (i, &w) in g.nodes().iter().enumerate().take(300) {
            let exact = d * n2(w) + (nu * w + d / w) * n1(w) + 2.0 * nu * n(w);
            assert!((lx[i] - exact).abs() < 2e-3 * (1.0 + exact.abs()), "{w}");
        }
    }

    #[test]
    fn zero_rate_gives_zero_operator() {
        let (g, _) = setup(0.3);
        let p = FieldParams::resonant(0.0).unwrap();
        for k in 0..3 {
            let op = build_lk(&g, k, &p).unwrap();
            assert!(op
                .diag
                .iter()
                .chain(&op.lower)
                .chain(&op.upper)
                .all(|&v| v == 0.0));
        }
    }

    #[test]
    fn centrifugal_term_is_exact() {
        let (g, p) = setup(0.7);
        let x: Vec<f64> = g.nodes().iter().map(|w| (w * 1.3).sin()).collect();
        let l0 = build_lk(&g, 0, &p).unwrap().apply(&x);
        let l1 = build_lk(&g, 1, &p).unwrap().apply(&x);
        for ((a, b), (&w, xi)) in l1.iter().zip(&l0).zip(g.nodes().iter().zip(&x)) {
            let want = -p.diffusion() / (w * w) * xi;
            assert!(((a - b) - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn shifted_solve_inverts() {
        let (g, p) = setup(0.5);
        let op = build_lk(&g, 2, &p).unwrap();
        let c = 0.01;
        let x: Vec<f64> = g.nodes().iter().map(|w| w * (-w).exp()).collect();
        let lx = op.apply(&x);
        let mut b: Vec<f64> = x.iter().zip(&lx).map(|(x, l)| x - c * l).collect();
        ShiftedSolve::new(&op, c).solve_in_place(&mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_large_k() {
        let (g, p) = setup(0.5);
        assert!(build_lk(&g, 3, &p).is_err());
    }
}
