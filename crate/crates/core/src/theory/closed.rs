use crate::field::FieldParams;
use crate::pde::RadialGrid;
use crate::special::{c0, c1, c2, c3, dawson, gauss_2f1, kummer_m, K};
use crate::{Error, Result};
use num_complex::Complex64;

/// Static-limit population relaxation `1 - s F(s/2)` at `s = omega0 t`.
pub fn n_static(s: f64) -> f64 {
    dawson(0.5 * s).map_or(f64::NAN, |f| 1.0 - s * f)
}

/// Static-limit coherence relaxation `(N_st + 1)/2` at `s = omega0 t`.
pub fn r_static(s: f64) -> f64 {
    0.5 * (n_static(s) + 1.0)
}

/// Weak-coupling exponentials `(exp(-t/T1), exp(-t/T2))`, `T1 = nu/omega0^2`,
/// `T2 = 2 T1`.
pub fn weak_coupling(t: f64, params: &FieldParams) -> (f64, f64) {
    let rate = params.omega0().powi(2) / params.nu();
    ((-rate * t).exp(), (-0.5 * rate * t).exp())
}

/// Short-time irreversible factor `J ~ 1 - D t^3 / 3`.
pub fn j_short_time(t: f64, params: &FieldParams) -> f64 {
    1.0 - params.diffusion() * t.powi(3) / 3.0
}

/// First-order-in-`D` radial profiles at one `omega`. `E` and `Q` are purely
/// imaginary; their imaginary parts are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeProfiles {
    pub n: f64,
    pub e_im: f64,
    pub p: f64,
    pub q_im: f64,
    pub r: f64,
}

pub fn short_time_profiles(omega: f64, t: f64, params: &FieldParams) -> Result<ShortTimeProfiles> {
    if !(omega.is_finite() && omega > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!(
            "short-time profiles need omega > 0 and finite t, got omega = {omega}, t = {t}"
        )));
    }
    let d = params.diffusion();
    let f = params.stationary_density(omega);
    let (s, c) = (omega * t).sin_cos();
    let w2 = omega * omega;
    let w3 = w2 * omega;
    let dt3 = d * t.powi(3) / 3.0;
    let a = 1.0 - dt3 - d * t / (2.0 * w2);
    let b = 1.0 - dt3 - 3.0 * d * t / (2.0 * w2);
    let n = f * (a * c + d * (1.0 - w2 * t * t) / (2.0 * w3) * s);
    let r = 0.5 * n + f * (0.5 - d * t / (2.0 * w2) * (2.0 + c) + 1.5 * d / w3 * s);
    let e_im = -2.0 * f * (0.5 * a * s + d * t * t / (4.0 * omega) * c);
    let p = f * (0.5 - 0.5 * b * c + d * (1.0 + w2 * t * t) / (4.0 * w3) * s - d * t / w2);
    let q_im = f * (b * s + d * (w2 * t * t - 4.0) / (2.0 * w3) * c + 2.0 * d / w3);
    Ok(ShortTimeProfiles {
        n,
        e_im,
        p,
        q_im,
        r,
    })
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "time must be finite and >= 0, got {t}"
        )))
    }
}

/// `K_0(t) = C1 exp(-2k nu t) F(k, k; 1+2k; exp(-2 nu t))`.
pub fn k0_of_t(t: f64, params: &FieldParams) -> Result<f64> {
    check_time(t)?;
    let x = (-2.0 * params.nu() * t).exp();
    Ok(c1() * x.powf(K) * gauss_2f1(K, K, 1.0 + 2.0 * K, x)?)
}

/// Leading small-`nu t` behaviour `1 + nu t (ln(nu t) - C3)`.
pub fn k0_small_rate(t: f64, params: &FieldParams) -> f64 {
    let x = params.nu() * t;
    if x == 0.0 {
        1.0
    } else {
        1.0 + x * (x.ln() - c3())
    }
}

/// Radial profile `C2 f(omega) zeta^k M(k, 2k+1, -zeta)`,
/// `zeta = omega^2 / (omega0^2 (exp(2 nu t) - 1))`.
pub fn k0_profile(omega: f64, t: f64, params: &FieldParams) -> Result<f64> {
    check_time(t)?;
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::Domain(format!("omega must be >= 0, got {omega}")));
    }
    let denom = (2.0 * params.nu() * t).exp_m1();
    if denom <= 0.0 {
        return Err(Error::Domain(
            "the profile law needs nu t > 0 (zeta is infinite at t = 0)".into(),
        ));
    }
    let zeta = omega * omega / (params.omega0().powi(2) * denom);
    if zeta == 0.0 {
        return Ok(0.0);
    }
    let f = params.stationary_density(omega);
    Ok(c2() * f * zeta.powf(K) * kummer_m(K, 2.0 * K + 1.0, -zeta)?)
}

/// Dephasing profile `f(omega) exp(i omega t - D t^3 / 3)`.
pub fn k1_profile(omega: f64, t: f64, params: &FieldParams) -> Complex64 {
    let f = params.stationary_density(omega);
    let decay = (-params.diffusion() * t.powi(3) / 3.0).exp();
    Complex64::from_polar(f * decay, omega * t)
}

/// `K_1(t)` by radial quadrature of [`k1_profile`] on `grid`.
pub fn k1_of_t(t: f64, params: &FieldParams, grid: &RadialGrid) -> Complex64 {
    let (re, im): (Vec<f64>, Vec<f64>) = grid
        .nodes()
        .iter()
        .map(|&w| {
            let z = k1_profile(w, t, params);
            (z.re, z.im)
        })
        .unzip();
    Complex64::new(grid.integrate(&re), grid.integrate(&im))
}

/// Closed form of [`k1_of_t`] on an infinite grid:
/// `exp(-D t^3/3) [N_st(omega0 t) + i (sqrt(pi) omega0 t / 2) exp(-(omega0 t)^2/4)]`.
pub fn k1_of_t_closed(t: f64, params: &FieldParams) -> Complex64 {
    let s = params.omega0() * t;
    let decay = (-params.diffusion() * t.powi(3) / 3.0).exp();
    let im = 0.5 * std::f64::consts::PI.sqrt() * s * (-0.25 * s * s).exp();
    decay * Complex64::new(n_static(s), im)
}

/// `R ~ 1/2 - 1/(omega0 t)^2 + nu t (C0 - ln(omega0 t))`.
pub fn r_intermediate(t: f64, params: &FieldParams) -> f64 {
    let s = params.omega0() * t;
    0.5 - 1.0 / (s * s) + params.nu() * t * (c0() - s.ln())
}

/// `R ~ 1/2 + (nu t / 2)(ln(nu t) - C3)`.
pub fn r_plateau(t: f64, params: &FieldParams) -> f64 {
    0.5 * k0_small_rate(t, params)
}

/// `R ~ C1 exp(-2k nu t)`.
pub fn r_tail(t: f64, params: &FieldParams) -> f64 {
    c1() * (-2.0 * K * params.nu() * t).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interpolation {
    /// `R_st(t) K_0(t)`.
    Product,
    /// `(N_st(t) + K_0(t)) / 2`.
    Mean,
}

/// All-time strong-coupling interpolation for `R(t)`.
pub fn r_interpolated(t: f64, params: &FieldParams, variant: Interpolation) -> Result<f64> {
    let s = params.omega0() * t;
    let k0 = k0_of_t(t, params)?;
    Ok(match variant {
        Interpolation::Product => r_static(s) * k0,
        Interpolation::Mean => 0.5 * (n_static(s) + k0),
    })
}
