//! Figure and pointer-state scenarios.

use crate::config::{Method, RunConfig, Scenario};
use crate::output::{nu_tag, CurveRecord, Plot, Series, Style};
use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use std::path::{Path, PathBuf};
use tlsrelax::montecarlo::{
    conditional_average, default_dt, ensemble_average, pointer_errors, pointer_project,
    DensityVector, McConfig,
};
use tlsrelax::pde::{
    extract_j, solve_coherence, solve_population, solve_scalars, PdeConfig, RadialGrid,
    MAX_COUPLING_RATIO,
};
use tlsrelax::theory::{
    n_static, pointer_prediction, r_interpolated, weak_coupling, Interpolation, ScalarSet, Window,
};
use tlsrelax::FieldParams;

/// Largest number of trajectory steps a single Monte Carlo run may take.
pub const MC_BUDGET: f64 = 2e10;

pub fn field_params(cfg: &RunConfig, nu: f64) -> Result<FieldParams> {
    FieldParams::new(1.0, nu, cfg.params.delta0).map_err(Into::into)
}

pub fn mc_dt(cfg: &RunConfig, p: &FieldParams) -> f64 {
    cfg.mc.dt.unwrap_or_else(|| default_dt(p))
}

/// Monte Carlo configuration recording about `cfg.mc.records` points.
pub fn mc_config(
    cfg: &RunConfig,
    n_traj: usize,
    dt: f64,
    t_max: f64,
    seed: u64,
) -> Result<McConfig> {
    let n_steps = (t_max / dt).round().max(1.0);
    if n_steps * n_traj as f64 > MC_BUDGET {
        bail!(
            "Monte Carlo run of {n_traj} trajectories x {n_steps} steps exceeds the budget of {MC_BUDGET:e} steps; lower t_max or n_traj"
        );
    }
    let stride = ((n_steps as usize) / cfg.mc.records).max(1);
    Ok(McConfig::new(n_traj, dt, t_max, seed)?.with_stride(stride)?)
}

pub fn grid(cfg: &RunConfig) -> Result<RadialGrid> {
    Ok(RadialGrid::new(
        cfg.pde.omega_max,
        cfg.pde.grid_points,
        1.0,
    )?)
}

/// Time after which the coarse PDE step is used in strong coupling.
fn coarse_switch(p: &FieldParams) -> f64 {
    (10.0 / p.alpha()).max(50.0)
}

pub fn pde_config(cfg: &RunConfig, p: &FieldParams, times: &[f64]) -> Result<PdeConfig> {
    let t_max = times.iter().cloned().fold(0.0, f64::max);
    let mut c = PdeConfig::new(t_max, cfg.pde.dt)?.with_record_times(times)?;
    let switch = coarse_switch(p);
    if cfg.pde.coarse_factor > 1 && p.nu() <= MAX_COUPLING_RATIO && t_max > 2.0 * switch {
        c = c.with_coarse_step(switch, cfg.pde.coarse_factor)?;
    }
    Ok(c)
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn log_times(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn out_dir(cfg: &RunConfig, scenario: Scenario) -> Result<PathBuf> {
    let dir = cfg.out.join(scenario.name());
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    std::fs::write(dir.join("config.toml"), cfg.to_toml())?;
    Ok(dir)
}

fn resonant_only(cfg: &RunConfig, method: Method, what: &str) -> Result<()> {
    if cfg.params.delta0 != 0.0 && (method.pde() || method.theory()) {
        bail!(
            "{what} with method {method} needs delta0 = 0 (the PDE and closed forms are resonant); use --method mc"
        );
    }
    Ok(())
}

fn base_record(
    scenario: Scenario,
    method: &str,
    quantity: &str,
    nu: f64,
    cfg: &RunConfig,
) -> impl Fn(CurveRecord) -> CurveRecord {
    let (scenario, method, quantity) = (
        scenario.name().to_string(),
        method.to_string(),
        quantity.to_string(),
    );
    let (seed, delta0) = (cfg.seed, cfg.params.delta0);
    move |c: CurveRecord| {
        c.with("scenario", &scenario)
            .with("method", &method)
            .with("quantity", &quantity)
            .with("nu_over_omega0", nu)
            .with("delta0", delta0)
            .with("seed", seed)
    }
}

fn seed_for(cfg: &RunConfig, k: usize) -> u64 {
    cfg.seed.wrapping_add(k as u64)
}

/// Files written by a scenario.
#[derive(Debug, Default)]
pub struct Written {
    pub files: Vec<PathBuf>,
}

impl Written {
    fn csv(&mut self, dir: &Path, name: &str, c: &CurveRecord) -> Result<()> {
        let path = dir.join(name);
        c.write(&path)?;
        self.files.push(path);
        Ok(())
    }

    fn svg(&mut self, dir: &Path, name: &str, p: &Plot) -> Result<()> {
        let path = dir.join(name);
        p.write(&path)?;
        self.files.push(path);
        Ok(())
    }
}

pub fn run_fig1(cfg: &RunConfig) -> Result<Written> {
    let sc = Scenario::Fig1;
    resonant_only(cfg, cfg.method, "fig1")?;
    let t_max = cfg.time.t_max.unwrap_or(10.0);
    let dir = out_dir(cfg, sc)?;
    let mut w = Written::default();
    let mut plot = Plot::new("Population relaxation N(t)", "Omega0 t", "N");
    let times = uniform(0.0, t_max, cfg.time.points);
    let st: Vec<f64> = times.iter().map(|&t| n_static(t)).collect();
    let rec = CurveRecord::new(times.clone(), st.clone(), None)
        .with("scenario", sc.name())
        .with("method", "theory")
        .with("quantity", "N_static");
    w.csv(&dir, "n_static.csv", &rec)?;
    plot.push(Series::new(
        "static limit",
        times.clone(),
        st,
        Style::DotDash,
    ));
    let g = grid(cfg)?;
    for (k, nu) in cfg.nu_list(sc).into_iter().enumerate() {
        let p = field_params(cfg, nu)?;
        let tag = nu_tag(nu);
        if cfg.method.pde() {
            let s = solve_scalars(&g, &p, &pde_config(cfg, &p, &times)?)?;
            let rec = base_record(sc, "pde", "N", nu, cfg)(CurveRecord::new(
                s.times.clone(),
                s.n.clone(),
                None,
            ));
            w.csv(&dir, &format!("n_pde_{tag}.csv"), &rec)?;
            plot.push(Series::new(
                format!("PDE nu={nu}"),
                s.times,
                s.n,
                Style::Solid,
            ));
        }
        if cfg.method.mc() {
            let mcc = mc_config(cfg, cfg.mc.n_traj, mc_dt(cfg, &p), t_max, seed_for(cfg, k))?;
            let avg = ensemble_average(&p, &mcc)?;
            let e = avg.n.stderr.clone().unwrap_or_default();
            let rec = base_record(sc, "mc", "N", nu, cfg)(
                CurveRecord::new(avg.n.times.clone(), avg.n.values.clone(), Some(e.clone()))
                    .with("n_traj", cfg.mc.n_traj)
                    .with("dt", mcc.dt()),
            );
            w.csv(&dir, &format!("n_mc_{tag}.csv"), &rec)?;
            plot.push(
                Series::new(
                    format!("MC nu={nu}"),
                    avg.n.times,
                    avg.n.values,
                    Style::Points,
                )
                .with_err(e),
            );
        }
        if cfg.method.theory() && Window::weak(&p).admissible {
            let v: Vec<f64> = times.iter().map(|&t| weak_coupling(t, &p).0).collect();
            let rec = base_record(sc, "theory", "N_weak", nu, cfg)(CurveRecord::new(
                times.clone(),
                v.clone(),
                None,
            ));
            w.csv(&dir, &format!("n_weak_{tag}.csv"), &rec)?;
            plot.push(Series::new(
                format!("exp(-t/T1) nu={nu}"),
                times.clone(),
                v,
                Style::Dashed,
            ));
        }
    }
    w.svg(&dir, "fig1.svg", &plot)?;
    Ok(w)
}

pub fn run_fig2(cfg: &RunConfig) -> Result<Written> {
    let sc = Scenario::Fig2;
    if cfg.method == Method::Mc {
        bail!("fig2 extracts J from the PDE population; method mc is not supported");
    }
    resonant_only(cfg, cfg.method, "fig2")?;
    let nus = cfg.nu_list(sc);
    if let Some(bad) = nus.iter().find(|&&nu| nu <= 0.0 || nu > MAX_COUPLING_RATIO) {
        bail!("fig2 needs strong coupling, 0 < nu/Omega0 <= {MAX_COUPLING_RATIO}; got {bad}");
    }
    let x_max = cfg.time.t_max.unwrap_or(4.0);
    let dir = out_dir(cfg, sc)?;
    let mut w = Written::default();
    let mut plot = Plot::new("J versus scaled time", "alpha t", "J");
    let units = "t is alpha t with alpha = (Omega0^2 nu)^(1/3); values are dimensionless";
    let g = grid(cfg)?;
    if cfg.method.pde() {
        for nu in &nus {
            let p = field_params(cfg, *nu)?;
            let t_max = x_max / p.alpha();
            let times = uniform(0.0, t_max, cfg.time.points.max(2000));
            let sol = solve_population(&g, &p, &pde_config(cfg, &p, &times)?)?;
            let j = extract_j(&p, &sol.n_curve())?;
            let rec = base_record(sc, "pde", "J", *nu, cfg)(
                CurveRecord::new(j.curve.times.clone(), j.curve.values.clone(), None)
                    .with("alpha", p.alpha())
                    .with("dropped_points", j.dropped.len())
                    .with_units(units),
            );
            w.csv(&dir, &format!("j_pde_{}.csv", nu_tag(*nu)), &rec)?;
            // break the line across dropped stretches
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            for (i, (&x, &y)) in j.curve.times.iter().zip(&j.curve.values).enumerate() {
                if i > 0 && j.at(0.5 * (x + j.curve.times[i - 1]), p.alpha()).is_none() {
                    xs.push(f64::NAN);
                    ys.push(f64::NAN);
                }
                xs.push(x);
                ys.push(y);
            }
            plot.push(Series::new(format!("PDE nu={nu}"), xs, ys, Style::Solid));
        }
    }
    if cfg.method.theory() {
        let xs = uniform(0.0, x_max.min(1.5), 200);
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - x.powi(3) / 6.0).collect();
        let rec = CurveRecord::new(xs.clone(), ys.clone(), None)
            .with("scenario", sc.name())
            .with("method", "theory")
            .with("quantity", "J_short_time")
            .with_units(units);
        w.csv(&dir, "j_short_time.csv", &rec)?;
        plot.push(Series::new("1 - (alpha t)^3/6", xs, ys, Style::Dashed));
    }
    w.svg(&dir, "fig2.svg", &plot)?;
    Ok(w)
}

pub fn run_fig3(cfg: &RunConfig) -> Result<Written> {
    let sc = Scenario::Fig3;
    resonant_only(cfg, cfg.method, "fig3")?;
    let dir = out_dir(cfg, sc)?;
    let mut w = Written::default();
    let mut plot = Plot::new("Coherence relaxation R(t)", "log10(Omega0 t)", "R");
    let g = grid(cfg)?;
    for (k, nu) in cfg.nu_list(sc).into_iter().enumerate() {
        let p = field_params(cfg, nu)?;
        let t_max =
            cfg.time
                .t_max
                .unwrap_or_else(|| if nu > 0.0 { (20.0 / nu).min(3e4) } else { 3e4 });
        let times = log_times(0.1, t_max, cfg.time.points);
        let tag = nu_tag(nu);
        let logx = |ts: &[f64]| ts.iter().map(|t| t.log10()).collect::<Vec<_>>();
        if cfg.method.pde() {
            let mut rec_times = vec![0.0];
            rec_times.extend_from_slice(&times);
            let sol = solve_coherence(&g, &p, &pde_config(cfg, &p, &rec_times)?)?;
            let rec = base_record(sc, "pde", "R", nu, cfg)(CurveRecord::new(
                sol.times.clone(),
                sol.r.clone(),
                None,
            ));
            w.csv(&dir, &format!("r_pde_{tag}.csv"), &rec)?;
            let (ts, rs): (Vec<f64>, Vec<f64>) = sol
                .times
                .iter()
                .zip(&sol.r)
                .filter(|(t, _)| **t > 0.0)
                .map(|(t, r)| (*t, *r))
                .unzip();
            plot.push(Series::new(
                format!("PDE nu={nu}"),
                logx(&ts),
                rs,
                Style::Solid,
            ));
        }
        if cfg.method.theory() && nu > 0.0 {
            let mut ts = vec![0.0];
            ts.extend_from_slice(&times);
            let v = ts
                .iter()
                .map(|&t| r_interpolated(t, &p, Interpolation::Product))
                .collect::<tlsrelax::Result<Vec<f64>>>()?;
            let rec = base_record(sc, "theory", "R_interpolated", nu, cfg)(CurveRecord::new(
                ts.clone(),
                v.clone(),
                None,
            ));
            w.csv(&dir, &format!("r_theory_{tag}.csv"), &rec)?;
            plot.push(Series::new(
                format!("interpolation nu={nu}"),
                logx(&ts[1..]),
                v[1..].to_vec(),
                Style::Dashed,
            ));
        }
        if cfg.method == Method::Mc {
            let mcc = mc_config(cfg, cfg.mc.n_traj, mc_dt(cfg, &p), t_max, seed_for(cfg, k))?;
            let avg = ensemble_average(&p, &mcc)?;
            let e = avg.r.stderr.clone().unwrap_or_default();
            let rec = base_record(sc, "mc", "R", nu, cfg)(
                CurveRecord::new(avg.r.times.clone(), avg.r.values.clone(), Some(e.clone()))
                    .with("n_traj", cfg.mc.n_traj)
                    .with("dt", mcc.dt()),
            );
            w.csv(&dir, &format!("r_mc_{tag}.csv"), &rec)?;
            let keep: Vec<usize> = (0..avg.r.times.len())
                .filter(|&i| avg.r.times[i] > 0.0)
                .collect();
            plot.push(
                Series::new(
                    format!("MC nu={nu}"),
                    keep.iter().map(|&i| avg.r.times[i].log10()).collect(),
                    keep.iter().map(|&i| avg.r.values[i]).collect(),
                    Style::Points,
                )
                .with_err(keep.iter().map(|&i| e[i]).collect()),
            );
        }
    }
    w.svg(&dir, "fig3.svg", &plot)?;
    Ok(w)
}

/// Largest off-diagonal magnitude and diagonal drift inside a time window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerSummary {
    pub max_off_diagonal: f64,
    pub max_diagonal_drift: f64,
}

fn summarise(times: &[f64], off: &[f64], drift: &[f64], lo: f64, hi: f64) -> PointerSummary {
    let mut s = PointerSummary {
        max_off_diagonal: 0.0,
        max_diagonal_drift: 0.0,
    };
    for (i, &t) in times.iter().enumerate() {
        if t >= lo - 1e-9 && t <= hi + 1e-9 {
            s.max_off_diagonal = s.max_off_diagonal.max(off[i]);
            s.max_diagonal_drift = s.max_diagonal_drift.max(drift[i].abs());
        }
    }
    s
}

pub fn run_pointer(cfg: &RunConfig) -> Result<Written> {
    let sc = Scenario::Pointer;
    resonant_only(cfg, cfg.method, "pointer")?;
    let pc = &cfg.pointer;
    let rho21 = Complex64::from_polar(pc.coherence, pc.phi_prime);
    let init = DensityVector::from_parts(pc.n0, rho21).context("pointer initial state")?;
    let dir = out_dir(cfg, sc)?;
    let mut w = Written::default();
    let mut off_plot = Plot::new("Pointer-basis coherence |rho+-|", "Omega0 t", "|rho+-|");
    let mut diag_plot = Plot::new(
        "Pointer-basis diagonal drift",
        "Omega0 t",
        "rho++(t) - rho++(0)",
    );
    let g = grid(cfg)?;
    let initial_pp = tlsrelax::montecarlo::PointerBasis::new(pc.phi_prime)
        .to_pointer(&init.matrix())
        .get(0, 0)
        .re;
    for (k, nu) in cfg.nu_list(sc).into_iter().enumerate() {
        let p = field_params(cfg, nu)?;
        let window = Window::strong_coupling(&p);
        if !window.admissible {
            bail!("pointer needs strong coupling (nu/Omega0 <= 1/3), got {nu}");
        }
        let tag = nu_tag(nu);
        let rb = |method: &str, q: &str| base_record(sc, method, q, nu, cfg);
        let mut emit = |method: &str,
                        times: Vec<f64>,
                        off: Vec<f64>,
                        drift: Vec<f64>,
                        errs: Option<(Vec<f64>, Vec<f64>)>,
                        w: &mut Written|
         -> Result<()> {
            let (eo, ed) = match errs {
                Some((a, b)) => (Some(a), Some(b)),
                None => (None, None),
            };
            let extra = |c: CurveRecord| {
                c.with("phi_prime", pc.phi_prime)
                    .with("n0", pc.n0)
                    .with("rho21_abs", pc.coherence)
                    .with("window_lo", window.lo)
            };
            let r1 = extra(rb(method, "abs_rho_plus_minus")(CurveRecord::new(
                times.clone(),
                off.clone(),
                eo.clone(),
            )));
            w.csv(&dir, &format!("offdiag_{method}_{tag}.csv"), &r1)?;
            let r2 = extra(rb(method, "rho_plus_plus_drift")(CurveRecord::new(
                times.clone(),
                drift.clone(),
                ed.clone(),
            )));
            w.csv(&dir, &format!("diag_{method}_{tag}.csv"), &r2)?;
            let s = summarise(&times, &off, &drift, pc.t_lo, pc.t_hi);
            println!(
                "pointer nu={nu} method={method} window=[{}, {}] max_abs_rho_plus_minus={:.6} limit={:.6} max_diagonal_drift={:.6} limit=0.05",
                pc.t_lo,
                pc.t_hi,
                s.max_off_diagonal,
                0.05 * pc.coherence,
                s.max_diagonal_drift
            );
            let style = if method == "mc" {
                Style::Points
            } else if method == "pde" {
                Style::Solid
            } else {
                Style::Dashed
            };
            let mut so = Series::new(format!("{method} nu={nu}"), times.clone(), off, style);
            let mut sd = Series::new(format!("{method} nu={nu}"), times, drift, style);
            if let (Some(a), Some(b)) = (eo, ed) {
                so = so.with_err(a);
                sd = sd.with_err(b);
            }
            off_plot.push(so);
            diag_plot.push(sd);
            Ok(())
        };
        if cfg.method.mc() {
            let mcc = mc_config(
                cfg,
                cfg.mc.n_traj,
                mc_dt(cfg, &p),
                pc.t_hi,
                seed_for(cfg, k),
            )?;
            let c = conditional_average(&p, &init, pc.phi_prime, &mcc)?;
            let proj = pointer_project(&c);
            let errs = pointer_errors(&c);
            let off: Vec<f64> = proj.iter().map(|m| m.get(0, 1).norm()).collect();
            let drift: Vec<f64> = proj.iter().map(|m| m.get(0, 0).re - initial_pp).collect();
            let eo: Vec<f64> = proj
                .iter()
                .zip(&errs)
                .map(|(m, e)| {
                    let z = m.get(0, 1);
                    let n = z.norm();
                    if n > 0.0 {
                        (z.re * e.plus_minus_re).hypot(z.im * e.plus_minus_im) / n
                    } else {
                        e.plus_minus_re.hypot(e.plus_minus_im)
                    }
                })
                .collect();
            let ed: Vec<f64> = errs.iter().map(|e| e.plus_plus).collect();
            emit("mc", c.times.clone(), off, drift, Some((eo, ed)), &mut w)?;
        }
        let times = uniform(0.0, pc.t_hi, cfg.time.points);
        if cfg.method.pde() {
            let s = solve_scalars(&g, &p, &pde_config(cfg, &p, &times)?)?;
            let (mut off, mut drift) = (Vec::new(), Vec::new());
            for &t in &s.times {
                let set = ScalarSet::from_pde(&p, &s, t)?;
                let pred = pointer_prediction(t, pc.phi_prime, &init, &p, &set, &set)?;
                off.push(pred.pointer.get(0, 1).norm());
                drift.push(pred.pointer.get(0, 0).re - initial_pp);
            }
            emit("pde", s.times.clone(), off, drift, None, &mut w)?;
        }
        if cfg.method.theory() {
            let ts: Vec<f64> = times
                .iter()
                .cloned()
                .filter(|&t| window.contains(t))
                .collect();
            if !ts.is_empty() {
                let (mut off, mut drift) = (Vec::new(), Vec::new());
                for &t in &ts {
                    let set = ScalarSet::from_theory(&p, t)?;
                    let pred = pointer_prediction(t, pc.phi_prime, &init, &p, &set, &set)?;
                    off.push(pred.pointer.get(0, 1).norm());
                    drift.push(pred.pointer.get(0, 0).re - initial_pp);
                }
                emit("theory", ts, off, drift, None, &mut w)?;
            }
        }
    }
    w.svg(&dir, "pointer_offdiag.svg", &off_plot)?;
    w.svg(&dir, "pointer_diag.svg", &diag_plot)?;
    Ok(w)
}
