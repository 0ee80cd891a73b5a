//! Browser bindings: static-limit curves, a PDE run and a Monte Carlo run,
//! each returning `N(t)` and `R(t)` on a common time axis.

use tlsrelax::montecarlo::{default_dt, ensemble_average, McConfig};
use tlsrelax::pde::{solve_scalars, PdeConfig, RadialGrid, DEFAULT_DT};
use tlsrelax::theory::{n_static, r_static};
use tlsrelax::{Error, FieldParams, Result};
use wasm_bindgen::prelude::*;

/// Longest time the page may request, in units of `1/Omega0`.
pub const MAX_T: f64 = 200.0;
pub const MAX_TRAJ: usize = 20_000;
const GRID_POINTS: usize = 1024;

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curves {
    times: Vec<f64>,
    n: Vec<f64>,
    r: Vec<f64>,
    n_err: Vec<f64>,
    r_err: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> Vec<f64> {
        self.n.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn r(&self) -> Vec<f64> {
        self.r.clone()
    }
    /// Standard errors of `n`; empty for deterministic methods.
    #[wasm_bindgen(getter)]
    pub fn n_err(&self) -> Vec<f64> {
        self.n_err.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn r_err(&self) -> Vec<f64> {
        self.r_err.clone()
    }
}

fn check_t(t_max: f64) -> Result<()> {
    if !(t_max > 0.0 && t_max <= MAX_T) {
        return Err(Error::InvalidParameter(format!(
            "t_max must lie in (0, {MAX_T}], got {t_max}"
        )));
    }
    Ok(())
}

pub fn compute_static(t_max: f64, points: usize) -> Result<Curves> {
    check_t(t_max)?;
    let points = points.clamp(2, 5000);
    let times: Vec<f64> = (0..points)
        .map(|i| t_max * i as f64 / (points - 1) as f64)
        .collect();
    Ok(Curves {
        n: times.iter().map(|&t| n_static(t)).collect(),
        r: times.iter().map(|&t| r_static(t)).collect(),
        times,
        n_err: Vec::new(),
        r_err: Vec::new(),
    })
}

pub fn compute_pde(nu: f64, t_max: f64, points: usize) -> Result<Curves> {
    check_t(t_max)?;
    let params = FieldParams::resonant(nu)?;
    let grid = RadialGrid::new(6.0, GRID_POINTS, 1.0)?;
    let points = points.clamp(2, 2000);
    let times: Vec<f64> = (0..points)
        .map(|i| t_max * i as f64 / (points - 1) as f64)
        .collect();
    let cfg = PdeConfig::new(t_max, DEFAULT_DT)?.with_record_times(&times)?;
    let out = solve_scalars(&grid, &params, &cfg)?;
    Ok(Curves {
        times: out.times,
        n: out.n,
        r: out.r,
        n_err: Vec::new(),
        r_err: Vec::new(),
    })
}

pub fn compute_mc(nu: f64, t_max: f64, n_traj: usize, seed: u64) -> Result<Curves> {
    check_t(t_max)?;
    if n_traj > MAX_TRAJ {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_TRAJ} trajectories"
        )));
    }
    let params = FieldParams::resonant(nu)?;
    let avg = ensemble_average(
        &params,
        &McConfig::new(n_traj, default_dt(&params), t_max, seed)?,
    )?;
    Ok(Curves {
        times: avg.n.times.clone(),
        n_err: avg.n.stderr.clone().unwrap_or_default(),
        r_err: avg.r.stderr.clone().unwrap_or_default(),
        n: avg.n.values,
        r: avg.r.values,
    })
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Static-field limit `N_st(t)`, `R_st(t)` on `points` evenly spaced times.
#[wasm_bindgen]
pub fn static_limit(t_max: f64, points: usize) -> std::result::Result<Curves, JsError> {
    compute_static(t_max, points).map_err(js)
}

/// Radial PDE solution for `nu/Omega0 = nu`.
#[wasm_bindgen]
pub fn pde_run(nu: f64, t_max: f64, points: usize) -> std::result::Result<Curves, JsError> {
    compute_pde(nu, t_max, points).map_err(js)
}

/// Monte Carlo average over `n_traj` field realisations.
#[wasm_bindgen]
pub fn mc_run(
    nu: f64,
    t_max: f64,
    n_traj: usize,
    seed: u64,
) -> std::result::Result<Curves, JsError> {
    compute_mc(nu, t_max, n_traj, seed).map_err(js)
}
