//! Trajectory Monte Carlo for the two-level system in the stochastic field.
//!
//! Each trajectory samples the field exactly, including its time integral
//! over every step, and rotates the pseudospin about that integral. Averages
//! over trajectories give the relaxation functions, conditional (backward)
//! averages for a fixed initial field phase, and the pointer-basis view.

mod engine;
mod fwdbwd;
mod pointer;
mod propagate;
mod state;

pub use engine::SampleStats;
pub use fwdbwd::{forward_backward_check, ForwardBackwardReport, GreenEntryCheck};
pub use pointer::{pointer_errors, pointer_project, PointerBasis, PointerErrors};
pub use propagate::{default_dt, propagate, Precession};
pub use state::{DensityVector, Matrix2};

use crate::field::FieldParams;
use crate::{Error, RelaxationCurve, Result};
use num_complex::Complex64;

/// Upper bound on recorded time points per run.
const DEFAULT_MAX_RECORDS: usize = 200;

/// Resolution and seeding of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    n_traj: usize,
    dt: f64,
    n_steps: usize,
    stride: usize,
    seed: u64,
}

impl McConfig {
    /// `t_max` is rounded to a whole number of steps; about 200 evenly spaced
    /// times are recorded.
    pub fn new(n_traj: usize, dt: f64, t_max: f64, seed: u64) -> Result<Self> {
        if n_traj < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 trajectories, got {n_traj}"
            )));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_max must be non-negative, got {t_max}"
            )));
        }
        let n_steps = (t_max / dt).round() as usize;
        let stride = n_steps.div_ceil(DEFAULT_MAX_RECORDS).max(1);
        let n_steps = n_steps.div_ceil(stride) * stride;
        Ok(Self {
            n_traj,
            dt,
            n_steps,
            stride,
            seed,
        })
    }

    /// Record every `stride` steps instead of the default spacing.
    pub fn with_stride(mut self, stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidParameter("stride must be >= 1".into()));
        }
        self.n_steps = self.n_steps.div_ceil(stride) * stride;
        self.stride = stride;
        Ok(self)
    }

    /// Record only `t = 0` and the final time.
    pub fn endpoints_only(self) -> Result<Self> {
        let n = self.n_steps.max(1);
        self.with_stride(n)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn n_traj(&self) -> usize {
        self.n_traj
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_records(&self) -> usize {
        self.n_steps / self.stride + 1
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_records())
            .map(|i| (i * self.stride) as f64 * self.dt)
            .collect()
    }
}

/// Population and coherence relaxation functions estimated from trajectories.
#[derive(Debug, Clone)]
pub struct EnsembleAverage {
    /// `N(t)` from the initial state `n(0) = 1`.
    pub n: RelaxationCurve,
    /// `Re R(t)` from the initial state with `rho_21(0) = 1/2`.
    pub r: RelaxationCurve,
    /// `Im R(t)`; zero up to statistical error.
    pub r_imag: RelaxationCurve,
    pub n_traj: usize,
}

/// Estimate `N(t)` and `R(t)`, both from stationary initial fields.
///
/// The population and coherence channels are propagated along the same
/// field realisations.
pub fn ensemble_average(params: &FieldParams, cfg: &McConfig) -> Result<EnsembleAverage> {
    let spins = [
        DensityVector::excited().pseudospin(),
        DensityVector::coherent().pseudospin(),
    ];
    let m = engine::run(
        params,
        cfg,
        &spins,
        1,
        3,
        |rng| params.sample_stationary(rng),
        |snap, out| {
            out[0] = snap.spins[0][2];
            // rho_21(t)/rho_21(0) with rho_21(0) = 1/2 is s_x + i s_y
            out[1] = snap.spins[1][0];
            out[2] = snap.spins[1][1];
            0
        },
    );
    let times = cfg.times();
    let mut cols = [(); 3].map(|_| (Vec::new(), Vec::new()));
    for rec in 0..m.n_records() {
        let st = m.stats(rec, 0);
        for (k, (v, e)) in cols.iter_mut().enumerate() {
            v.push(st.mean[k]);
            e.push(st.stderr(k));
        }
    }
    let [(nv, ne), (rv, re), (iv, ie)] = cols;
    Ok(EnsembleAverage {
        n: RelaxationCurve::with_stderr(times.clone(), nv, ne)?,
        r: RelaxationCurve::with_stderr(times.clone(), rv, re)?,
        r_imag: RelaxationCurve::with_stderr(times, iv, ie)?,
        n_traj: cfg.n_traj(),
    })
}

/// Averaged state as a pseudospin time series.
#[derive(Debug, Clone)]
pub struct StateSeries {
    pub times: Vec<f64>,
    pub mean: Vec<[f64; 3]>,
    pub stderr: Vec<[f64; 3]>,
}

/// Fully averaged evolution of an arbitrary initial state.
pub fn average_density(
    params: &FieldParams,
    initial: &DensityVector,
    cfg: &McConfig,
) -> Result<StateSeries> {
    let m = engine::run(
        params,
        cfg,
        &[initial.pseudospin()],
        1,
        3,
        |rng| params.sample_stationary(rng),
        |snap, out| {
            out.copy_from_slice(&snap.spins[0]);
            0
        },
    );
    let mut mean = Vec::with_capacity(m.n_records());
    let mut stderr = Vec::with_capacity(m.n_records());
    for rec in 0..m.n_records() {
        let st = m.stats(rec, 0);
        mean.push([st.mean[0], st.mean[1], st.mean[2]]);
        stderr.push([st.stderr(0), st.stderr(1), st.stderr(2)]);
    }
    Ok(StateSeries {
        times: cfg.times(),
        mean,
        stderr,
    })
}

/// Standard errors of the independent entries of a 2x2 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryErrors {
    pub rho11: f64,
    pub rho21_re: f64,
    pub rho21_im: f64,
}

/// Density matrix averaged over realisations whose initial field phase is
/// fixed to `phi_prime`, with the initial magnitude drawn from its
/// stationary radial law.
#[derive(Debug, Clone)]
pub struct ConditionalAverage {
    pub phi_prime: f64,
    pub times: Vec<f64>,
    pub rho_series: Vec<Matrix2>,
    pub n_samples: usize,
    pub stderr_series: Vec<EntryErrors>,
    /// Covariance of the mean pseudospin, row-major 3x3, per time.
    pub pseudospin_cov: Vec<[f64; 9]>,
}

impl ConditionalAverage {
    pub fn mean_pseudospin(&self, i: usize) -> [f64; 3] {
        let m = &self.rho_series[i];
        let rho21 = m.get(1, 0);
        [
            2.0 * rho21.re,
            2.0 * rho21.im,
            m.get(0, 0).re - m.get(1, 1).re,
        ]
    }

    /// Mean and standard error of `c . s(t_i)`.
    pub fn linear(&self, i: usize, c: [f64; 3]) -> (f64, f64) {
        let s = self.mean_pseudospin(i);
        let cov = &self.pseudospin_cov[i];
        let mean = c[0] * s[0] + c[1] * s[1] + c[2] * s[2];
        let mut var = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                var += c[a] * c[b] * cov[a * 3 + b];
            }
        }
        (mean, var.max(0.0).sqrt())
    }
}

pub fn conditional_average(
    params: &FieldParams,
    initial: &DensityVector,
    phi_prime: f64,
    cfg: &McConfig,
) -> Result<ConditionalAverage> {
    if !phi_prime.is_finite() {
        return Err(Error::InvalidParameter("phi_prime must be finite".into()));
    }
    let m = engine::run(
        params,
        cfg,
        &[initial.pseudospin()],
        1,
        3,
        |rng| crate::FieldState::from_polar(params.sample_radius(rng), phi_prime),
        |snap, out| {
            out.copy_from_slice(&snap.spins[0]);
            0
        },
    );
    let mut rho_series = Vec::with_capacity(m.n_records());
    let mut stderr_series = Vec::with_capacity(m.n_records());
    let mut pseudospin_cov = Vec::with_capacity(m.n_records());
    for rec in 0..m.n_records() {
        let st = m.stats(rec, 0);
        let rho21 = Complex64::new(0.5 * st.mean[0], 0.5 * st.mean[1]);
        rho_series.push(Matrix2::density(st.mean[2], rho21));
        stderr_series.push(EntryErrors {
            rho11: 0.5 * st.stderr(2),
            rho21_re: 0.5 * st.stderr(0),
            rho21_im: 0.5 * st.stderr(1),
        });
        let mut cov = [0.0; 9];
        cov.copy_from_slice(&st.cov_of_mean);
        pseudospin_cov.push(cov);
    }
    Ok(ConditionalAverage {
        phi_prime,
        times: cfg.times(),
        rho_series,
        n_samples: cfg.n_traj(),
        stderr_series,
        pseudospin_cov,
    })
}
