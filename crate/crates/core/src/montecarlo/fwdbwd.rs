//! Statistical check of the relation between forward partial averages
//! (conditioned on the final field phase) and backward partial averages
//! (conditioned on the initial field phase):
//! `G~(phi', t) = S^-2 G^T(-phi', t) S^2` with `S = diag(-sqrt 2, 1, sqrt 2)`.

use super::{engine, McConfig};
use crate::field::FieldParams;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Minimum number of trajectories per phase bin.
pub const MIN_BIN_COUNT: usize = 30;
/// Agreement threshold in combined standard errors.
pub const N_SIGMA: f64 = 3.0;

/// Independent entries of the 3x3 Green function: the remaining ones follow
/// from `G_{-i,-j} = conj(G_{i,j})`.
const ENTRIES: [(usize, usize); 5] = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)];
/// Diagonal of `S^2`.
const S_SQUARED: [f64; 3] = [2.0, 1.0, 2.0];
const BACKWARD_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// One compared real number.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenEntryCheck {
    /// Backward phase bin; the forward side uses the mirrored bin.
    pub bin: usize,
    pub row: usize,
    pub col: usize,
    pub imaginary: bool,
    pub backward: f64,
    /// `[S^-2 G^T S^2]` at the mirrored phase.
    pub forward: f64,
    pub sigma: f64,
    pub z: f64,
}

#[derive(Debug, Clone)]
pub struct ForwardBackwardReport {
    pub t: f64,
    pub n_bins: usize,
    pub forward_counts: Vec<u64>,
    pub backward_counts: Vec<u64>,
    pub checks: Vec<GreenEntryCheck>,
    pub max_abs_z: f64,
    /// Both sides equal the identity at `t = 0` in every bin.
    pub identity_at_zero: bool,
    /// Chi-square of the forward `N` entry against a phase-independent mean.
    pub population_chi2: f64,
    pub population_dof: usize,
    pub passed: bool,
}

fn bin_of(phi: f64, n_bins: usize) -> usize {
    let width = TAU / n_bins as f64;
    ((phi / width).round() as usize) % n_bins
}

fn mirror(bin: usize, n_bins: usize) -> usize {
    (n_bins - bin) % n_bins
}

// s = W r and r = W^-1 s for r = (rho_12, n, rho_21), s the pseudospin.
fn w() -> [[Complex64; 3]; 3] {
    let (o, z, i) = (
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    [[o, z, o], [i, z, -i], [z, o, z]]
}

fn w_inv() -> [[Complex64; 3]; 3] {
    let (h, z, hi) = (
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.5),
    );
    [[h, -hi, z], [z, z, Complex64::new(1.0, 0.0)], [h, hi, z]]
}

/// Coefficients `c` such that `G_ij = sum_{kl} c[k*3+l] R_kl`.
fn green_coefficients(i: usize, j: usize) -> [Complex64; 9] {
    let (w, wi) = (w(), w_inv());
    let mut c = [Complex64::new(0.0, 0.0); 9];
    for k in 0..3 {
        for l in 0..3 {
            c[k * 3 + l] = wi[i][k] * w[l][j];
        }
    }
    c
}

pub(crate) fn green_from_rotation(r: &[f64]) -> [[Complex64; 3]; 3] {
    let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let c = green_coefficients(i, j);
            *cell = c.iter().zip(r).map(|(c, r)| c * r).sum();
        }
    }
    g
}

/// Estimate both partial averages at `t = cfg.t_max` from independent
/// trajectory sets and compare them entrywise.
pub fn forward_backward_check(
    params: &FieldParams,
    cfg: &McConfig,
    n_bins: usize,
) -> Result<ForwardBackwardReport> {
    if n_bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 phase bins, got {n_bins}"
        )));
    }
    let cfg = cfg.clone().endpoints_only()?;
    let basis = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    // Feature k*3+l is R_kl, the k-th component of the rotated l-th basis vector.
    let fill = |spins: &[[f64; 3]], out: &mut [f64]| {
        for k in 0..3 {
            for l in 0..3 {
                out[k * 3 + l] = spins[l][k];
            }
        }
    };
    let forward = engine::run(
        params,
        &cfg,
        &basis,
        n_bins,
        9,
        |rng| params.sample_stationary(rng),
        |snap, out| {
            fill(snap.spins, out);
            bin_of(snap.field.phi(), n_bins)
        },
    );
    let bwd_cfg = cfg.clone().with_seed(cfg.seed() ^ BACKWARD_SEED_SALT);
    let backward = engine::run(
        params,
        &bwd_cfg,
        &basis,
        n_bins,
        9,
        |rng| params.sample_stationary(rng),
        |snap, out| {
            fill(snap.spins, out);
            bin_of(snap.initial.phi(), n_bins)
        },
    );

    let last = forward.n_records() - 1;
    let mut forward_counts = Vec::with_capacity(n_bins);
    let mut backward_counts = Vec::with_capacity(n_bins);
    for b in 0..n_bins {
        let (f, bw) = (forward.stats(last, b), backward.stats(last, b));
        for (side, count) in [(f.count, f.count), (bw.count, bw.count)] {
            if (side as usize) < MIN_BIN_COUNT {
                return Err(Error::SparseBin {
                    bin: b,
                    count: count as usize,
                    required: MIN_BIN_COUNT,
                });
            }
        }
        forward_counts.push(f.count);
        backward_counts.push(bw.count);
    }

    // At t = 0 every trajectory contributes the identity rotation.
    let mut identity_at_zero = true;
    for m in [&forward, &backward] {
        for b in 0..n_bins {
            let st = m.stats(0, b);
            if st.count == 0 {
                continue;
            }
            let g = green_from_rotation(&st.mean);
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    if (v - want).norm() > 1e-14 {
                        identity_at_zero = false;
                    }
                }
            }
        }
    }

    let mut checks = Vec::new();
    for b in 0..n_bins {
        let bw = backward.stats(last, b);
        let fw = forward.stats(last, mirror(b, n_bins));
        for &(i, j) in &ENTRIES {
            // backward side: G~_ij ; forward side: S2_j / S2_i * G_ji
            let cb = green_coefficients(i, j);
            let cf = green_coefficients(j, i);
            let scale = S_SQUARED[j] / S_SQUARED[i];
            for imaginary in [false, true] {
                let part = |c: &[Complex64; 9], s: f64| -> [f64; 9] {
                    c.map(|z| s * if imaginary { z.im } else { z.re })
                };
                let coeff_b = part(&cb, 1.0);
                let coeff_f = part(&cf, scale);
                if coeff_b.iter().all(|&x| x == 0.0) && coeff_f.iter().all(|&x| x == 0.0) {
                    continue;
                }
                let (vb, eb) = bw.linear(&coeff_b);
                let (vf, ef) = fw.linear(&coeff_f);
                let sigma = eb.hypot(ef);
                let z = if sigma > 0.0 { (vb - vf) / sigma } else { 0.0 };
                checks.push(GreenEntryCheck {
                    bin: b,
                    row: i,
                    col: j,
                    imaginary,
                    backward: vb,
                    forward: vf,
                    sigma,
                    z,
                });
            }
        }
    }
    let max_abs_z = checks.iter().map(|c| c.z.abs()).fold(0.0, f64::max);

    // The forward N entry carries no phase factor.
    let c_n = green_coefficients(1, 1).map(|z| z.re);
    let per_bin: Vec<(f64, f64)> = (0..n_bins)
        .map(|b| forward.stats(last, b).linear(&c_n))
        .collect();
    let wsum: f64 = per_bin.iter().map(|(_, e)| 1.0 / (e * e)).sum();
    let wmean = per_bin.iter().map(|(v, e)| v / (e * e)).sum::<f64>() / wsum;
    let population_chi2 = per_bin.iter().map(|(v, e)| ((v - wmean) / e).powi(2)).sum();

    let passed = identity_at_zero && max_abs_z <= N_SIGMA;
    Ok(ForwardBackwardReport {
        t: cfg.times().last().copied().unwrap_or(0.0),
        n_bins,
        forward_counts,
        backward_counts,
        checks,
        max_abs_z,
        identity_at_zero,
        population_chi2,
        population_dof: n_bins - 1,
        passed,
    })
}
