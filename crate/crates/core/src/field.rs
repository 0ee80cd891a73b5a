//! Exact sampling of the complex Ornstein-Uhlenbeck coupling
//! `Omega_c(t) = u(t) + i v(t)` with `<Omega_c(t) Omega_c*(0)> = Omega0^2 exp(-nu t)`.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use std::f64::consts::TAU;

/// Upper bound on the number of states a single [`trajectory`] may hold.
pub const MAX_TRAJECTORY_LEN: usize = 20_000_000;

/// Reservoir parameters. `Omega0` is the rms coupling, `nu` the inverse
/// correlation time and `delta0` the detuning, all in the same angular
/// frequency units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    omega0: f64,
    nu: f64,
    delta0: f64,
}

impl FieldParams {
    pub fn new(omega0: f64, nu: f64, delta0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be positive, got {omega0}"
            )));
        }
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "nu must be non-negative, got {nu}"
            )));
        }
        if !delta0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "delta0 must be finite, got {delta0}"
            )));
        }
        Ok(Self { omega0, nu, delta0 })
    }

    /// Resonant parameters in units where `Omega0 = 1`.
    pub fn resonant(nu_over_omega0: f64) -> Result<Self> {
        Self::new(1.0, nu_over_omega0, 0.0)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    /// Diffusion coefficient `D = Omega0^2 nu / 2` of the field vector.
    pub fn diffusion(&self) -> f64 {
        0.5 * self.omega0 * self.omega0 * self.nu
    }

    /// Irreversible relaxation rate `alpha = (Omega0^2 nu)^(1/3) = (2D)^(1/3)`.
    pub fn alpha(&self) -> f64 {
        (self.omega0 * self.omega0 * self.nu).cbrt()
    }

    /// Stationary variance of each quadrature, `Omega0^2 / 2`.
    pub fn quadrature_variance(&self) -> f64 {
        0.5 * self.omega0 * self.omega0
    }

    /// Stationary density of the field vector, `exp(-Omega^2/Omega0^2) / (pi Omega0^2)`.
    pub fn stationary_density(&self, omega: f64) -> f64 {
        let w2 = self.omega0 * self.omega0;
        (-omega * omega / w2).exp() / (std::f64::consts::PI * w2)
    }

    /// Draw from the stationary Gaussian distribution.
    pub fn sample_stationary<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldState {
        let sd = self.quadrature_variance().sqrt();
        let u: f64 = rng.sample(StandardNormal);
        let v: f64 = rng.sample(StandardNormal);
        FieldState::new(sd * u, sd * v)
    }

    /// Draw the field magnitude from its stationary radial density
    /// `2 pi Omega f(Omega)`, i.e. a Rayleigh law.
    pub fn sample_radius<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let e: f64 = rng.sample(Exp1);
        self.omega0 * e.sqrt()
    }

    /// Exact one-step update of both quadratures over `dt`.
    pub fn step<R: Rng + ?Sized>(&self, state: FieldState, dt: f64, rng: &mut R) -> FieldState {
        OuStepper::new(self, dt).advance(state, rng)
    }
}

/// Instantaneous complex coupling `Omega_c = u + i v = Omega exp(i phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldState {
    pub u: f64,
    pub v: f64,
}

impl FieldState {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn from_polar(omega: f64, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            u: omega * c,
            v: omega * s,
        }
    }

    pub fn omega(&self) -> f64 {
        self.u.hypot(self.v)
    }

    /// Phase in `[0, 2 pi)`.
    pub fn phi(&self) -> f64 {
        let p = self.v.atan2(self.u);
        if p < 0.0 {
            let wrapped = p + TAU;
            if wrapped >= TAU {
                0.0
            } else {
                wrapped
            }
        } else {
            p
        }
    }
}

/// Independent random stream for trajectory `index` under `seed`.
///
/// Streams never overlap, so trajectories can be generated in any order or
/// on any thread and still reproduce bit-for-bit.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Precomputed coefficients for the exact joint update of one quadrature
/// and its time integral over a fixed step.
///
/// Given `x(t)`, the pair `(x(t+dt), int_t^{t+dt} x ds)` is bivariate
/// Gaussian; it is generated as
/// `x' = decay x + a xi1` and `I = b x + c xi1 + d xi2`.
#[derive(Debug, Clone, Copy)]
pub struct OuStepper {
    decay: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl OuStepper {
    pub fn new(params: &FieldParams, dt: f64) -> Self {
        let s2 = params.quadrature_variance();
        let nu = params.nu;
        let x = nu * dt;
        if x == 0.0 {
            return Self {
                decay: 1.0,
                a: 0.0,
                b: dt,
                c: 0.0,
                d: 0.0,
            };
        }
        let decay = (-x).exp();
        let var_next = s2 * -f64::exp_m1(-2.0 * x);
        let a = var_next.sqrt();
        let b = -f64::exp_m1(-x) / nu;
        // Var[I | x] = s2/nu^2 (2x - 3 + 4 e^-x - e^-2x)
        let var_int = s2 / (nu * nu) * integral_variance_kernel(x);
        let cov = s2 / nu * f64::exp_m1(-x).powi(2);
        let c = cov / a;
        let d = (var_int - c * c).max(0.0).sqrt();
        Self { decay, a, b, c, d }
    }

    /// Field at the end of the step only.
    pub fn advance<R: Rng + ?Sized>(&self, state: FieldState, rng: &mut R) -> FieldState {
        let xu: f64 = rng.sample(StandardNormal);
        let xv: f64 = rng.sample(StandardNormal);
        FieldState::new(
            self.decay * state.u + self.a * xu,
            self.decay * state.v + self.a * xv,
        )
    }

    /// Field at the end of the step together with `int u ds` and `int v ds`
    /// over the step.
    pub fn advance_with_integral<R: Rng + ?Sized>(
        &self,
        state: FieldState,
        rng: &mut R,
    ) -> (FieldState, [f64; 2]) {
        let n: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let next = FieldState::new(
            self.decay * state.u + self.a * n[0],
            self.decay * state.v + self.a * n[1],
        );
        let int_u = self.b * state.u + self.c * n[0] + self.d * n[2];
        let int_v = self.b * state.v + self.c * n[1] + self.d * n[3];
        (next, [int_u, int_v])
    }
}

// 2x - 3 + 4 e^-x - e^-2x, via its Taylor series where it cancels badly.
fn integral_variance_kernel(x: f64) -> f64 {
    if x > 0.5 {
        return 2.0 * x - 3.0 + 4.0 * (-x).exp() - (-2.0 * x).exp();
    }
    // sum_{n>=3} [4 (-1)^n - (-2)^n] x^n / n!
    let mut sum = 0.0;
    let mut pow_over_fact = x * x / 2.0; // x^2 / 2!
    let mut sign = 1.0; // (-1)^n
    let mut two_pow = 4.0; // 2^n
    for n in 3..=30 {
        pow_over_fact *= x / n as f64;
        sign = -sign;
        two_pow *= 2.0;
        sum += (4.0 * sign - sign * two_pow) * pow_over_fact;
    }
    sum
}

/// Sample a field path of `n_steps` exact updates, starting from `initial`
/// or from the stationary distribution.
pub fn trajectory<R: Rng + ?Sized>(
    params: &FieldParams,
    dt: f64,
    n_steps: usize,
    rng: &mut R,
    initial: Option<FieldState>,
) -> Result<Vec<FieldState>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let len = n_steps
        .checked_add(1)
        .filter(|&l| l <= MAX_TRAJECTORY_LEN)
        .ok_or(Error::TooLarge {
            requested: n_steps.saturating_add(1),
            budget: MAX_TRAJECTORY_LEN,
        })?;
    let stepper = OuStepper::new(params, dt);
    let mut state = initial.unwrap_or_else(|| params.sample_stationary(rng));
    let mut path = Vec::with_capacity(len);
    path.push(state);
    for _ in 0..n_steps {
        state = stepper.advance(state, rng);
        path.push(state);
    }
    Ok(path)
}
