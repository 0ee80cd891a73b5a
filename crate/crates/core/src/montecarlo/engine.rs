//! Trajectory loop shared by all Monte Carlo estimators.
//!
//! Trajectory `i` draws from `stream_rng(seed, i)`. Trajectories are grouped
//! into fixed chunks whose partial sums are combined in chunk order, so the
//! result does not depend on the number of worker threads.

use super::propagate::Precession;
use super::McConfig;
use crate::field::{stream_rng, FieldParams, FieldState, OuStepper};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CHUNK: usize = 128;

/// What an observer sees at a recorded time.
pub(crate) struct Snapshot<'a> {
    pub spins: &'a [[f64; 3]],
    pub field: FieldState,
    pub initial: FieldState,
}

/// Sums of features and of their pairwise products, per record and bin.
#[derive(Debug, Clone)]
pub(crate) struct Moments {
    n_rec: usize,
    n_bins: usize,
    n_feat: usize,
    count: Vec<u64>,
    sum: Vec<f64>,
    cross: Vec<f64>,
}

impl Moments {
    fn new(n_rec: usize, n_bins: usize, n_feat: usize) -> Self {
        Self {
            n_rec,
            n_bins,
            n_feat,
            count: vec![0; n_rec * n_bins],
            sum: vec![0.0; n_rec * n_bins * n_feat],
            cross: vec![0.0; n_rec * n_bins * n_feat * n_feat],
        }
    }

    fn add(&mut self, rec: usize, bin: usize, x: &[f64]) {
        let cell = rec * self.n_bins + bin;
        let f = self.n_feat;
        self.count[cell] += 1;
        let s = &mut self.sum[cell * f..(cell + 1) * f];
        for (acc, &v) in s.iter_mut().zip(x) {
            *acc += v;
        }
        let c = &mut self.cross[cell * f * f..(cell + 1) * f * f];
        for i in 0..f {
            for j in i..f {
                c[i * f + j] += x[i] * x[j];
            }
        }
    }

    fn merge(&mut self, other: &Moments) {
        for (a, b) in self.count.iter_mut().zip(&other.count) {
            *a += b;
        }
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.cross.iter_mut().zip(&other.cross) {
            *a += b;
        }
    }

    pub fn stats(&self, rec: usize, bin: usize) -> SampleStats {
        let cell = rec * self.n_bins + bin;
        let f = self.n_feat;
        let n = self.count[cell];
        let nf = n as f64;
        let sum = &self.sum[cell * f..(cell + 1) * f];
        let mean: Vec<f64> = sum
            .iter()
            .map(|s| if n > 0 { s / nf } else { 0.0 })
            .collect();
        let mut cov = vec![0.0; f * f];
        if n > 1 {
            let c = &self.cross[cell * f * f..(cell + 1) * f * f];
            for i in 0..f {
                for j in i..f {
                    let v = (c[i * f + j] - nf * mean[i] * mean[j]) / (nf - 1.0) / nf;
                    cov[i * f + j] = v;
                    cov[j * f + i] = v;
                }
            }
        }
        SampleStats {
            count: n,
            mean,
            cov_of_mean: cov,
        }
    }

    pub fn n_records(&self) -> usize {
        self.n_rec
    }
}

/// Sample mean of a feature vector and the covariance of that mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub count: u64,
    pub mean: Vec<f64>,
    /// Row-major covariance matrix of the mean estimator.
    pub cov_of_mean: Vec<f64>,
}

impl SampleStats {
    pub fn stderr(&self, i: usize) -> f64 {
        let f = self.mean.len();
        self.cov_of_mean[i * f + i].max(0.0).sqrt()
    }

    /// Mean and standard error of `sum_i coeffs[i] * feature_i`.
    pub fn linear(&self, coeffs: &[f64]) -> (f64, f64) {
        let f = self.mean.len();
        let mean = coeffs.iter().zip(&self.mean).map(|(a, m)| a * m).sum();
        let mut var = 0.0;
        for i in 0..f {
            for j in 0..f {
                var += coeffs[i] * coeffs[j] * self.cov_of_mean[i * f + j];
            }
        }
        (mean, var.max(0.0).sqrt())
    }
}

/// Run `cfg.n_traj` trajectories, rotating every spin in `spins0` along each
/// sampled field, and accumulate the observer's features at every recorded
/// time. The observer fills the feature slice and returns the bin index.
pub(crate) fn run<I, O>(
    params: &FieldParams,
    cfg: &McConfig,
    spins0: &[[f64; 3]],
    n_bins: usize,
    n_feat: usize,
    init: I,
    observe: O,
) -> Moments
where
    I: Fn(&mut ChaCha8Rng) -> FieldState + Sync,
    O: Fn(&Snapshot<'_>, &mut [f64]) -> usize + Sync,
{
    let n_steps = cfg.n_steps();
    let stride = cfg.stride();
    let n_rec = cfg.n_records();
    let stepper = OuStepper::new(params, cfg.dt());
    let detuning_angle = params.delta0() * cfg.dt();
    let n_chunks = cfg.n_traj().div_ceil(CHUNK);

    let partial: Vec<Moments> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = Moments::new(n_rec, n_bins, n_feat);
            let mut spins = spins0.to_vec();
            let mut feat = vec![0.0; n_feat];
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(cfg.n_traj());
            for traj in lo..hi {
                let mut rng = stream_rng(cfg.seed(), traj as u64);
                let initial = init(&mut rng);
                let mut field = initial;
                spins.copy_from_slice(spins0);
                let mut record =
                    |rec: usize, spins: &[[f64; 3]], field: FieldState, acc: &mut Moments| {
                        let snap = Snapshot {
                            spins,
                            field,
                            initial,
                        };
                        let bin = observe(&snap, &mut feat);
                        acc.add(rec, bin, &feat);
                    };
                record(0, &spins, field, &mut acc);
                for step in 1..=n_steps {
                    let (next, int) = stepper.advance_with_integral(field, &mut rng);
                    field = next;
                    let rot = Precession::new([int[0], int[1], detuning_angle]);
                    for s in spins.iter_mut() {
                        rot.apply(s);
                    }
                    if step % stride == 0 {
                        record(step / stride, &spins, field, &mut acc);
                    }
                }
            }
            acc
        })
        .collect();

    let mut total = Moments::new(n_rec, n_bins, n_feat);
    for m in &partial {
        total.merge(m);
    }
    total
}
