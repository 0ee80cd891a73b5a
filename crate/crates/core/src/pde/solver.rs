use super::operator::{build_lk, ShiftedSolve, Tridiagonal};
use super::RadialGrid;
use crate::field::FieldParams;
use crate::{Error, RelaxationCurve, Result};
use std::f64::consts::SQRT_2;

/// Default time step in units of `1/omega0`.
pub const DEFAULT_DT: f64 = 0.005;
const DEFAULT_MAX_RECORDS: usize = 2000;
/// Profiles may not exceed this multiple of the initial peak.
const GROWTH_BOUND: f64 = 4.0;
// TR-BDF2 with gamma = 2 - sqrt 2: both stages solve with (I - c tau L),
// c = gamma/2 = (1 - gamma)/(2 - gamma).
const GAMMA: f64 = 2.0 - SQRT_2;
const TRBDF2_C: f64 = GAMMA / 2.0;

/// Time grid of a radial solve: a base step, optionally a coarser step
/// after some time, and the steps at which scalars (and optionally whole
/// profiles) are recorded. Step indices count base steps.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeConfig {
    dt: f64,
    n_steps: usize,
    record_steps: Vec<usize>,
    profile_steps: Vec<usize>,
    /// `(first coarse step, factor)`.
    coarse: Option<(usize, usize)>,
}

impl PdeConfig {
    /// Uniform recording of at most 2000 points on `[0, t_max]`.
    pub fn new(t_max: f64, dt: f64) -> Result<Self> {
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
        let mut record_steps: Vec<usize> = (0..=n_steps).step_by(stride).collect();
        if *record_steps.last().unwrap() != n_steps {
            record_steps.push(n_steps);
        }
        Ok(Self {
            dt,
            n_steps,
            record_steps,
            profile_steps: Vec::new(),
            coarse: None,
        })
    }

    /// From `t_switch` on, advance `factor` base steps at a time. Once the
    /// fast Rabi phases have dephased, the surviving profiles are smooth and
    /// a much longer step keeps the same accuracy. All recorded times are
    /// moved onto the coarse lattice.
    pub fn with_coarse_step(mut self, t_switch: f64, factor: usize) -> Result<Self> {
        if factor == 0 || !(t_switch.is_finite() && t_switch >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bad coarse step: switch at {t_switch}, factor {factor}"
            )));
        }
        self.coarse = Some(((t_switch / self.dt).round() as usize, factor));
        self.n_steps = self.snap_step(self.n_steps);
        let resnap = |v: &mut Vec<usize>, c: &Self| {
            for s in v.iter_mut() {
                *s = c.snap_step(*s).min(c.n_steps);
            }
            v.dedup();
        };
        let mut rec = std::mem::take(&mut self.record_steps);
        resnap(&mut rec, &self);
        let mut prof = std::mem::take(&mut self.profile_steps);
        resnap(&mut prof, &self);
        self.record_steps = rec;
        self.profile_steps = prof;
        Ok(self)
    }

    fn snap_step(&self, s: usize) -> usize {
        match self.coarse {
            Some((switch, factor)) if s > switch => {
                switch + ((s - switch) as f64 / factor as f64).round() as usize * factor
            }
            _ => s,
        }
    }

    fn step_size_at(&self, s: usize) -> usize {
        match self.coarse {
            Some((switch, factor)) if s >= switch => factor,
            _ => 1,
        }
    }

    /// Record at the steps nearest to `times` (plus `t = 0`), ending at the
    /// last of them.
    pub fn with_record_times(mut self, times: &[f64]) -> Result<Self> {
        let mut steps = self.snap(times)?;
        steps.push(0);
        steps.sort_unstable();
        steps.dedup();
        self.n_steps = *steps.last().unwrap();
        self.record_steps = steps;
        self.profile_steps.retain(|&s| s <= self.n_steps);
        Ok(self)
    }

    /// Also keep the full radial profiles at the steps nearest to `times`.
    pub fn with_profile_times(mut self, times: &[f64]) -> Result<Self> {
        let mut steps = self.snap(times)?;
        if steps.iter().any(|&s| s > self.n_steps) {
            return Err(Error::InvalidParameter(
                "profile time beyond the end of the run".into(),
            ));
        }
        steps.sort_unstable();
        steps.dedup();
        for &s in &steps {
            if let Err(pos) = self.record_steps.binary_search(&s) {
                self.record_steps.insert(pos, s);
            }
        }
        self.profile_steps = steps;
        Ok(self)
    }

    fn snap(&self, times: &[f64]) -> Result<Vec<usize>> {
        times
            .iter()
            .map(|&t| {
                if t.is_finite() && t >= 0.0 {
                    Ok(self.snap_step((t / self.dt).round() as usize))
                } else {
                    Err(Error::InvalidParameter(format!("bad record time {t}")))
                }
            })
            .collect()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn t_max(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        self.record_steps
            .iter()
            .map(|&s| s as f64 * self.dt)
            .collect()
    }
}

/// The five radial functions at one time. Unused channels are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfiles {
    pub time: f64,
    pub n: Vec<f64>,
    /// `E' = i E`.
    pub ep: Vec<f64>,
    pub p: Vec<f64>,
    /// `Q' = i Q`.
    pub qp: Vec<f64>,
    pub r: Vec<f64>,
}

impl RadialProfiles {
    /// `P + R`.
    pub fn k0(&self) -> Vec<f64> {
        self.p.iter().zip(&self.r).map(|(p, r)| p + r).collect()
    }
}

#[derive(Debug, Clone)]
pub struct PopulationSolution {
    pub times: Vec<f64>,
    pub n: Vec<f64>,
    /// `Im E(t)`; `E(t)` is purely imaginary.
    pub e_im: Vec<f64>,
    pub profiles: Vec<RadialProfiles>,
}

impl PopulationSolution {
    pub fn n_curve(&self) -> RelaxationCurve {
        RelaxationCurve::new(self.times.clone(), self.n.clone()).expect("solver times increase")
    }
}

#[derive(Debug, Clone)]
pub struct CoherenceSolution {
    pub times: Vec<f64>,
    pub r: Vec<f64>,
    pub p: Vec<f64>,
    /// `Im Q(t)`; `Q(t)` is purely imaginary.
    pub q_im: Vec<f64>,
    /// `K_0 = P + R`.
    pub k0: Vec<f64>,
    /// `Re K_1 = R - P`.
    pub k1_re: Vec<f64>,
    /// `Im K_1 = Im Q / sqrt 2`.
    pub k1_im: Vec<f64>,
    pub profiles: Vec<RadialProfiles>,
}

impl CoherenceSolution {
    pub fn r_curve(&self) -> RelaxationCurve {
        RelaxationCurve::new(self.times.clone(), self.r.clone()).expect("solver times increase")
    }

    pub fn k0_curve(&self) -> RelaxationCurve {
        RelaxationCurve::new(self.times.clone(), self.k0.clone()).expect("solver times increase")
    }
}

/// All integrated scalars on a shared time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarOutputs {
    pub times: Vec<f64>,
    pub n: Vec<f64>,
    pub r: Vec<f64>,
    pub p: Vec<f64>,
    pub e_im: Vec<f64>,
    pub q_im: Vec<f64>,
    pub k0: Vec<f64>,
    pub k1_re: Vec<f64>,
    pub k1_im: Vec<f64>,
}

/// Values of every scalar at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPoint {
    pub t: f64,
    pub n: f64,
    pub r: f64,
    pub p: f64,
    pub e_im: f64,
    pub q_im: f64,
    pub k0: f64,
    pub k1_re: f64,
    pub k1_im: f64,
}

impl ScalarPoint {
    /// The values at `t = 0`.
    pub fn initial() -> Self {
        Self {
            t: 0.0,
            n: 1.0,
            r: 1.0,
            p: 0.0,
            e_im: 0.0,
            q_im: 0.0,
            k0: 1.0,
            k1_re: 1.0,
            k1_im: 0.0,
        }
    }
}

impl ScalarOutputs {
    pub fn point(&self, i: usize) -> ScalarPoint {
        ScalarPoint {
            t: self.times[i],
            n: self.n[i],
            r: self.r[i],
            p: self.p[i],
            e_im: self.e_im[i],
            q_im: self.q_im[i],
            k0: self.k0[i],
            k1_re: self.k1_re[i],
            k1_im: self.k1_im[i],
        }
    }

    /// Linear interpolation in time; `None` outside the solved range.
    pub fn at(&self, t: f64) -> Option<ScalarPoint> {
        let ts = &self.times;
        if ts.is_empty() || t < ts[0] || t > *ts.last().unwrap() {
            return None;
        }
        let j = ts
            .partition_point(|&x| x <= t)
            .clamp(1, ts.len().max(2) - 1);
        if ts.len() == 1 {
            return Some(self.point(0));
        }
        let (a, b) = (self.point(j - 1), self.point(j));
        let w = (t - a.t) / (b.t - a.t);
        let mix = |x: f64, y: f64| x + w * (y - x);
        Some(ScalarPoint {
            t,
            n: mix(a.n, b.n),
            r: mix(a.r, b.r),
            p: mix(a.p, b.p),
            e_im: mix(a.e_im, b.e_im),
            q_im: mix(a.q_im, b.q_im),
            k0: mix(a.k0, b.k0),
            k1_re: mix(a.k1_re, b.k1_re),
            k1_im: mix(a.k1_im, b.k1_im),
        })
    }
}

fn check_resonant(params: &FieldParams) -> Result<()> {
    if params.delta0() != 0.0 {
        return Err(Error::InvalidParameter(
            "the radial equations are solved at exact resonance only".into(),
        ));
    }
    Ok(())
}

struct Channel {
    op: Tridiagonal,
    dt: f64,
    half: ShiftedSolve,
    full: ShiftedSolve,
}

impl Channel {
    fn new(grid: &RadialGrid, k: u32, params: &FieldParams, dt: f64) -> Result<Self> {
        let op = build_lk(grid, k, params)?;
        let half = ShiftedSolve::new(&op, TRBDF2_C * 0.5 * dt);
        let full = ShiftedSolve::new(&op, TRBDF2_C * dt);
        Ok(Self { op, dt, half, full })
    }

    // One TR-BDF2 step of du/dt = L u over dt or dt/2.
    fn diffuse(&self, u: &mut [f64], half: bool, work: &mut [f64], u0: &mut [f64]) {
        let (solver, tau) = if half {
            (&self.half, 0.5 * self.dt)
        } else {
            (&self.full, self.dt)
        };
        u0.copy_from_slice(u);
        // trapezoidal stage to gamma tau: (I - cL) u* = (I + cL) u
        self.op.apply_into(u0, work);
        let c = TRBDF2_C * tau;
        for (ui, wi) in u.iter_mut().zip(work.iter()) {
            *ui += c * wi;
        }
        solver.solve_in_place(u);
        // BDF2 stage back to tau
        let a = 1.0 / (GAMMA * (2.0 - GAMMA));
        let b = (1.0 - GAMMA).powi(2) / (GAMMA * (2.0 - GAMMA));
        for (ui, u0i) in u.iter_mut().zip(u0.iter()) {
            *ui = a * *ui - b * u0i;
        }
        solver.solve_in_place(u);
    }
}

/// Strang splitting: half diffusion, exact rotation at every node, half
/// diffusion. Consecutive half diffusions between records are merged.
fn integrate<Rot, Rec>(
    grid: &RadialGrid,
    params: &FieldParams,
    cfg: &PdeConfig,
    ks: &[u32],
    mut state: Vec<Vec<f64>>,
    rotate: Rot,
    mut record: Rec,
) -> Result<()>
where
    Rot: Fn(f64, f64, &mut [Vec<f64>], usize),
    Rec: FnMut(usize, &[Vec<f64>]),
{
    check_resonant(params)?;
    let n = grid.n_points();
    let diffusive = params.nu() > 0.0;
    // one set of solvers and rotation tables per step size in use
    let mut sizes = vec![1];
    if let Some((_, factor)) = cfg.coarse {
        sizes.push(factor);
    }
    let mut levels = Vec::with_capacity(sizes.len());
    for &m in &sizes {
        let dt = m as f64 * cfg.dt;
        let channels = if diffusive {
            ks.iter()
                .map(|&k| Channel::new(grid, k, params, dt))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let (sin, cos): (Vec<f64>, Vec<f64>) =
            grid.nodes().iter().map(|w| (w * dt).sin_cos()).unzip();
        levels.push((channels, sin, cos));
    }
    let level_of = |step: usize| usize::from(cfg.step_size_at(step) > 1);
    let peak0 = state
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = GROWTH_BOUND * peak0.max(f64::MIN_POSITIVE);
    let mut work = vec![0.0; n];
    let mut u0 = vec![0.0; n];
    let mut diffuse = |level: usize, state: &mut [Vec<f64>], half: bool| {
        for (ch, u) in levels[level].0.iter().zip(state.iter_mut()) {
            ch.diffuse(u, half, &mut work, &mut u0);
        }
    };

    let mut next_rec = 0;
    if cfg.record_steps.first() == Some(&0) {
        record(0, &state);
        next_rec = 1;
    }
    if cfg.n_steps == 0 {
        return Ok(());
    }
    let mut pos = 0;
    let mut level = level_of(0);
    diffuse(level, &mut state, true);
    while pos < cfg.n_steps {
        let (_, sin, cos) = &levels[level];
        for i in 0..n {
            rotate(sin[i], cos[i], &mut state, i);
        }
        pos += cfg.step_size_at(pos);
        let next_level = level_of(pos);
        let recording = cfg.record_steps.get(next_rec) == Some(&pos);
        if recording || pos >= cfg.n_steps || next_level != level {
            diffuse(level, &mut state, true);
            let peak = state.iter().flat_map(|c| c.iter()).fold(0.0f64, |m, v| {
                if v.is_finite() {
                    m.max(v.abs())
                } else {
                    f64::INFINITY
                }
            });
            if peak > bound {
                let dt = cfg.step_size_at(pos.saturating_sub(1)) as f64 * cfg.dt;
                return Err(Error::Unstable {
                    time: pos as f64 * cfg.dt,
                    suggested_dt: 0.5 * dt,
                });
            }
            if recording {
                record(next_rec, &state);
                next_rec += 1;
            }
            if pos < cfg.n_steps {
                diffuse(next_level, &mut state, true);
            }
            level = next_level;
        } else {
            diffuse(level, &mut state, false);
        }
    }
    Ok(())
}

fn snapshot(
    cfg: &PdeConfig,
    rec: usize,
    grid: &RadialGrid,
    parts: [Option<&Vec<f64>>; 5],
) -> Option<RadialProfiles> {
    let step = cfg.record_steps[rec];
    cfg.profile_steps.binary_search(&step).ok()?;
    let take = |p: Option<&Vec<f64>>| p.cloned().unwrap_or_else(|| vec![0.0; grid.n_points()]);
    let [n, ep, p, qp, r] = parts;
    Some(RadialProfiles {
        time: step as f64 * cfg.dt,
        n: take(n),
        ep: take(ep),
        p: take(p),
        qp: take(qp),
        r: take(r),
    })
}

/// Population channel from `N(omega, 0) = f(omega)`, `E(omega, 0) = 0`:
/// `dN/dt = -omega E' + L_0 N`, `dE'/dt = omega N + L_1 E'`.
pub fn solve_population(
    grid: &RadialGrid,
    params: &FieldParams,
    cfg: &PdeConfig,
) -> Result<PopulationSolution> {
    let f = grid.stationary(params);
    let state = vec![f, vec![0.0; grid.n_points()]];
    let mut out = PopulationSolution {
        times: cfg.times(),
        n: Vec::with_capacity(cfg.record_steps.len()),
        e_im: Vec::with_capacity(cfg.record_steps.len()),
        profiles: Vec::new(),
    };
    integrate(
        grid,
        params,
        cfg,
        &[0, 1],
        state,
        |s, c, st, i| {
            let (n, e) = (st[0][i], st[1][i]);
            st[0][i] = c * n - s * e;
            st[1][i] = s * n + c * e;
        },
        |rec, st| {
            out.n.push(grid.integrate(&st[0]));
            out.e_im.push(-grid.integrate(&st[1]));
            if let Some(p) = snapshot(
                cfg,
                rec,
                grid,
                [Some(&st[0]), Some(&st[1]), None, None, None],
            ) {
                out.profiles.push(p);
            }
        },
    )?;
    Ok(out)
}

/// Coherence channel from `R(omega, 0) = f(omega)`, `P = Q = 0`:
/// `dP/dt = -omega Q'/2 + L_2 P`, `dQ'/dt = -omega (R - P) + L_1 Q'`,
/// `dR/dt = omega Q'/2 + L_0 R`.
pub fn solve_coherence(
    grid: &RadialGrid,
    params: &FieldParams,
    cfg: &PdeConfig,
) -> Result<CoherenceSolution> {
    let f = grid.stationary(params);
    let zero = vec![0.0; grid.n_points()];
    let state = vec![zero.clone(), zero, f];
    let cap = cfg.record_steps.len();
    let mut out = CoherenceSolution {
        times: cfg.times(),
        r: Vec::with_capacity(cap),
        p: Vec::with_capacity(cap),
        q_im: Vec::with_capacity(cap),
        k0: Vec::with_capacity(cap),
        k1_re: Vec::with_capacity(cap),
        k1_im: Vec::with_capacity(cap),
        profiles: Vec::new(),
    };
    integrate(
        grid,
        params,
        cfg,
        &[2, 1, 0],
        state,
        |s, c, st, i| {
            // exp(theta M) = I + sin M + (1 - cos) M^2 with M^3 = -M
            let (p, q, r) = (st[0][i], st[1][i], st[2][i]);
            let (mp, mq, mr) = (-0.5 * q, p - r, 0.5 * q);
            let (m2p, m2q, m2r) = (0.5 * (r - p), -q, 0.5 * (p - r));
            let k = 1.0 - c;
            st[0][i] = p + s * mp + k * m2p;
            st[1][i] = q + s * mq + k * m2q;
            st[2][i] = r + s * mr + k * m2r;
        },
        |rec, st| {
            let p = grid.integrate(&st[0]);
            let q_im = -grid.integrate(&st[1]);
            let r = grid.integrate(&st[2]);
            out.p.push(p);
            out.q_im.push(q_im);
            out.r.push(r);
            out.k0.push(p + r);
            out.k1_re.push(r - p);
            out.k1_im.push(q_im / SQRT_2);
            if let Some(pr) = snapshot(
                cfg,
                rec,
                grid,
                [None, None, Some(&st[0]), Some(&st[1]), Some(&st[2])],
            ) {
                out.profiles.push(pr);
            }
        },
    )?;
    Ok(out)
}

/// Both channels on the same time grid, solved concurrently.
pub fn solve_scalars(
    grid: &RadialGrid,
    params: &FieldParams,
    cfg: &PdeConfig,
) -> Result<ScalarOutputs> {
    let (pop, coh) = rayon::join(
        || solve_population(grid, params, cfg),
        || solve_coherence(grid, params, cfg),
    );
    let (pop, coh) = (pop?, coh?);
    Ok(ScalarOutputs {
        times: pop.times,
        n: pop.n,
        r: coh.r,
        p: coh.p,
        e_im: pop.e_im,
        q_im: coh.q_im,
        k0: coh.k0,
        k1_re: coh.k1_re,
        k1_im: coh.k1_im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> RadialGrid {
        RadialGrid::new(6.0, 512, 1.0).unwrap()
    }

    #[test]
    fn config_snaps_and_records() {
        let c = PdeConfig::new(1.0, 0.01).unwrap();
        assert_eq!(c.n_steps(), 100);
        assert_eq!(c.times().len(), 101);
        let c = c.with_record_times(&[0.5, 0.25]).unwrap();
        assert_eq!(c.times(), vec![0.0, 0.25, 0.5]);
        assert!(c.clone().with_profile_times(&[0.6]).is_err());
        let c = c.with_profile_times(&[0.1]).unwrap();
        assert_eq!(c.times().len(), 4);
    }

    #[test]
    fn coarse_step_snaps_records() {
        let c = PdeConfig::new(10.0, 0.01)
            .unwrap()
            .with_record_times(&[1.0, 5.03, 10.0])
            .unwrap()
            .with_coarse_step(2.0, 10)
            .unwrap();
        assert_eq!(c.n_steps(), 1000);
        let t = c.times();
        assert!((t[2] - 5.0).abs() < 1e-12, "{t:?}");
        assert!(PdeConfig::new(1.0, 0.01)
            .unwrap()
            .with_coarse_step(0.5, 0)
            .is_err());
    }

    #[test]
    fn coarse_step_agrees_after_dephasing() {
        let p = FieldParams::resonant(0.01).unwrap();
        let g = small_grid();
        let times = [60.0, 120.0, 200.0];
        let fine = PdeConfig::new(200.0, 0.01)
            .unwrap()
            .with_record_times(&times)
            .unwrap();
        let coarse = fine.clone().with_coarse_step(50.0, 20).unwrap();
        let a = solve_coherence(&g, &p, &fine).unwrap();
        let b = solve_coherence(&g, &p, &coarse).unwrap();
        for i in 0..a.times.len() {
            assert!(
                (a.k0[i] - b.k0[i]).abs() < 1e-4,
                "t={}: {} vs {}",
                a.times[i],
                a.k0[i],
                b.k0[i]
            );
            assert!((a.r[i] - b.r[i]).abs() < 1e-4);
        }
    }

    #[test]
    fn initial_scalars() {
        let p = FieldParams::resonant(0.1).unwrap();
        let g = RadialGrid::standard(&p);
        let cfg = PdeConfig::new(0.0, 0.01)
            .unwrap()
            .with_profile_times(&[0.0])
            .unwrap();
        let s = solve_scalars(&g, &p, &cfg).unwrap();
        assert!((s.n[0] - 1.0).abs() < 1e-8);
        assert!((s.r[0] - 1.0).abs() < 1e-8);
        assert_eq!((s.p[0], s.q_im[0], s.e_im[0]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn static_limit_rotation_is_exact() {
        // with nu = 0 each node only rotates: N = f cos(omega t)
        let p = FieldParams::resonant(0.0).unwrap();
        let g = small_grid();
        let cfg = PdeConfig::new(2.0, 0.01)
            .unwrap()
            .with_profile_times(&[2.0])
            .unwrap();
        let sol = solve_population(&g, &p, &cfg).unwrap();
        let prof = sol.profiles.last().unwrap();
        let f = g.stationary(&p);
        for (i, &w) in g.nodes().iter().enumerate() {
            assert!((prof.n[i] - f[i] * (w * 2.0).cos()).abs() < 1e-12);
            assert!((prof.ep[i] - f[i] * (w * 2.0).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn population_stays_bounded() {
        let p = FieldParams::resonant(1.0).unwrap();
        let g = small_grid();
        let cfg = PdeConfig::new(1.0, 0.01).unwrap();
        let sol = solve_population(&g, &p, &cfg).unwrap();
        assert!(sol.n.iter().all(|v| v.abs() <= 1.0 + 1e-9));
    }

    #[test]
    fn rejects_detuning() {
        let p = FieldParams::new(1.0, 0.1, 0.5).unwrap();
        let g = small_grid();
        let cfg = PdeConfig::new(1.0, 0.01).unwrap();
        assert!(solve_population(&g, &p, &cfg).is_err());
    }

    #[test]
    fn scalar_interpolation() {
        let s = ScalarOutputs {
            times: vec![0.0, 1.0],
            n: vec![1.0, 0.0],
            r: vec![1.0, 0.5],
            p: vec![0.0, 0.0],
            e_im: vec![0.0, 0.0],
            q_im: vec![0.0, 0.0],
            k0: vec![1.0, 1.0],
            k1_re: vec![1.0, 0.0],
            k1_im: vec![0.0, 0.0],
        };
        let m = s.at(0.25).unwrap();
        assert!((m.n - 0.75).abs() < 1e-15);
        assert!(s.at(1.5).is_none());
    }
}
