use crate::field::FieldParams;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Smallest cutoff, in units of `omega0`.
pub const MIN_OMEGA_MAX: f64 = 5.0;
/// Largest cell width, in units of `omega0`.
pub const MAX_SPACING: f64 = 0.05;

/// Uniform cell-centred grid on `[0, omega_max]`: node `i` sits at
/// `(i + 1/2) h`, so no coefficient is ever evaluated at `omega = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    omega_max: f64,
    n_points: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl RadialGrid {
    /// `omega_max` is in absolute units; it must be at least `5 omega0`.
    pub fn new(omega_max: f64, n_points: usize, omega0: f64) -> Result<Self> {
        if !(omega_max.is_finite() && omega0 > 0.0 && omega_max >= MIN_OMEGA_MAX * omega0) {
            return Err(Error::InvalidParameter(format!(
                "omega_max = {omega_max} is below {MIN_OMEGA_MAX} omega0"
            )));
        }
        let h = omega_max / n_points as f64;
        if n_points < 2 || h > MAX_SPACING * omega0 {
            return Err(Error::GridTooCoarse(format!(
                "spacing {h} with {n_points} points exceeds {MAX_SPACING} omega0"
            )));
        }
        let nodes = (0..n_points).map(|i| (i as f64 + 0.5) * h).collect();
        Ok(Self {
            omega_max,
            n_points,
            h,
            nodes,
        })
    }

    /// `omega_max = 6 omega0`, 2048 points.
    pub fn standard(params: &FieldParams) -> Self {
        Self::new(6.0 * params.omega0(), 2048, params.omega0()).expect("standard grid is valid")
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Stationary density sampled at the nodes.
    pub fn stationary(&self, params: &FieldParams) -> Vec<f64> {
        self.nodes
            .iter()
            .map(|&w| params.stationary_density(w))
            .collect()
    }

    /// `2 pi int_0^omega_max g(omega) omega d omega` by the midpoint rule
    /// with the leading Euler-Maclaurin correction at `omega = 0`.
    ///
    /// The integrand `2 pi omega g` has slope `2 pi g(0)` at the origin,
    /// which leaves an `h^2/12` error in the plain midpoint sum; `g(0)` is
    /// extrapolated from the first two nodes.
    pub fn integrate(&self, g: &[f64]) -> f64 {
        debug_assert_eq!(g.len(), self.n_points);
        let h = self.h;
        let sum: f64 = g.iter().zip(&self.nodes).map(|(g, w)| g * w).sum();
        let g0 = 1.5 * g[0] - 0.5 * g[1];
        2.0 * PI * (h * sum - h * h / 24.0 * g0)
    }
}
