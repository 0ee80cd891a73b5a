use super::closed::{k0_of_t, k1_of_t_closed};
use super::Window;
use crate::field::FieldParams;
use crate::montecarlo::{DensityVector, Matrix2, PointerBasis};
use crate::pde::{ScalarOutputs, ScalarPoint};
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarSource {
    /// Known values at `t = 0`.
    Exact,
    /// Interpolated from a radial solve.
    Pde,
    /// Strong-coupling closed forms.
    Theory,
}

impl ScalarSource {
    pub fn name(self) -> &'static str {
        match self {
            ScalarSource::Exact => "exact",
            ScalarSource::Pde => "pde",
            ScalarSource::Theory => "theory",
        }
    }
}

/// Relaxation scalars at one time, stamped with where they came from and
/// for which parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarSet {
    pub source: ScalarSource,
    pub nu: f64,
    pub point: ScalarPoint,
    /// Whether the source is expected to be accurate at this time.
    pub in_window: bool,
}

impl ScalarSet {
    pub fn initial(params: &FieldParams) -> Self {
        Self {
            source: ScalarSource::Exact,
            nu: params.nu(),
            point: ScalarPoint::initial(),
            in_window: true,
        }
    }

    pub fn from_pde(params: &FieldParams, out: &ScalarOutputs, t: f64) -> Result<Self> {
        let point = out.at(t).ok_or_else(|| {
            Error::InvalidParameter(format!("t = {t} is outside the solved time range"))
        })?;
        Ok(Self {
            source: ScalarSource::Pde,
            nu: params.nu(),
            point,
            in_window: true,
        })
    }

    /// Dephased-regime values: `K_0` from the hypergeometric law, `K_1` from
    /// the dephasing law, and `N = E = 0`.
    pub fn from_theory(params: &FieldParams, t: f64) -> Result<Self> {
        let k0 = k0_of_t(t, params)?;
        let k1 = k1_of_t_closed(t, params);
        Ok(Self {
            source: ScalarSource::Theory,
            nu: params.nu(),
            point: ScalarPoint {
                t,
                n: 0.0,
                r: 0.5 * (k0 + k1.re),
                p: 0.5 * (k0 - k1.re),
                e_im: 0.0,
                q_im: std::f64::consts::SQRT_2 * k1.im,
                k0,
                k1_re: k1.re,
                k1_im: k1.im,
            },
            in_window: Window::strong_coupling(params).contains(t),
        })
    }
}

/// Predicted conditional state for a fixed initial field phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerPrediction {
    pub t: f64,
    pub phi_prime: f64,
    /// In the `{|1>, |2>}` basis.
    pub lab: Matrix2,
    /// In the pointer basis of `phi_prime`.
    pub pointer: Matrix2,
    /// Source of `K_0`, which alone fixes the pointer-basis diagonal.
    pub diagonal_source: ScalarSource,
    /// Source of `N`, `E` and `K_1`.
    pub coherence_source: ScalarSource,
    pub in_window: bool,
}

fn same_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Assemble the conditional density matrix from the backward partial
/// average
///
/// ```text
/// G~ = [[ R,            -e^{-i phi'} Q/2, e^{-2i phi'} P ],
///       [ e^{i phi'} E,   N,              -e^{-i phi'} E ],
///       [ e^{2i phi'} P,  e^{i phi'} Q/2,  R             ]]
/// ```
///
/// acting on `(rho_12, n, rho_21)(0)`, with `R, P = (K_0 +- Re K_1)/2`.
/// `K_0` comes from `diagonal`; `N`, `E`, `Q` and `Re K_1` from `rest`.
/// Both sets must refer to time `t` and the rate of `params`.
pub fn pointer_prediction(
    t: f64,
    phi_prime: f64,
    rho0: &DensityVector,
    params: &FieldParams,
    diagonal: &ScalarSet,
    rest: &ScalarSet,
) -> Result<PointerPrediction> {
    for set in [diagonal, rest] {
        if !same_time(set.point.t, t) || set.nu != params.nu() {
            return Err(Error::InvalidParameter(format!(
                "{} scalars are for t = {}, nu = {} but the prediction is for t = {t}, nu = {}",
                set.source.name(),
                set.point.t,
                set.nu,
                params.nu()
            )));
        }
    }
    let k0 = diagonal.point.k0;
    let q = rest.point;
    let r = 0.5 * (k0 + q.k1_re);
    let p = 0.5 * (k0 - q.k1_re);
    let n0 = rho0.population_difference();
    let z = rho0.rho21() * Complex64::from_polar(1.0, -phi_prime);
    // rho~_21 e^{-i phi'} = P z* + (Q/2) n0 + R z
    let w = p * z.conj() + Complex64::new(0.0, 0.5 * q.q_im * n0) + r * z;
    let rho21 = w * Complex64::from_polar(1.0, phi_prime);
    // n~ = N n0 + E (z* - z) with E = i e_im
    let n = q.n * n0 + 2.0 * q.e_im * z.im;
    let lab = Matrix2::density(n, rho21);
    let pointer = PointerBasis::new(phi_prime).to_pointer(&lab);
    Ok(PointerPrediction {
        t,
        phi_prime,
        lab,
        pointer,
        diagonal_source: diagonal.source,
        coherence_source: rest.source,
        in_window: diagonal.in_window && rest.in_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state() -> DensityVector {
        DensityVector::from_parts(0.1, Complex64::from_polar(0.45, 0.9)).unwrap()
    }

    #[test]
    fn initial_scalars_reproduce_initial_state() {
        let p = FieldParams::resonant(0.01).unwrap();
        let s = ScalarSet::initial(&p);
        let pred = pointer_prediction(0.0, 0.4, &state(), &p, &s, &s).unwrap();
        assert!((pred.lab - state().matrix()).max_abs() < 1e-15);
        let want = PointerBasis::new(0.4).to_pointer(&state().matrix());
        assert!((pred.pointer - want).max_abs() < 1e-15);
    }

    #[test]
    fn diagonal_follows_k0() {
        let p = FieldParams::resonant(0.001).unwrap();
        let t = 100.0;
        let s = ScalarSet::from_theory(&p, t).unwrap();
        assert!(s.in_window);
        let phi = 0.5;
        let pred = pointer_prediction(t, phi, &state(), &p, &s, &s).unwrap();
        let z = state().rho21() * Complex64::from_polar(1.0, -phi);
        let want = 0.5 + s.point.k0 * z.re;
        assert!((pred.pointer.get(0, 0).re - want).abs() < 1e-12);
        assert!(pred.pointer.is_hermitian(1e-14));
        assert!((pred.pointer.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn long_times_give_half_identity() {
        let p = FieldParams::resonant(0.01).unwrap();
        let t = 5000.0;
        let s = ScalarSet::from_theory(&p, t).unwrap();
        let pred = pointer_prediction(t, 1.0, &state(), &p, &s, &s).unwrap();
        let half = Matrix2::identity();
        let diff = pred.pointer - Matrix2(half.0.map(|row| row.map(|v| v * 0.5)));
        assert!(diff.max_abs() < 1e-6);
    }

    #[test]
    fn rejects_mismatched_sets() {
        let p = FieldParams::resonant(0.01).unwrap();
        let a = ScalarSet::from_theory(&p, 10.0).unwrap();
        let b = ScalarSet::from_theory(&p, 20.0).unwrap();
        assert!(pointer_prediction(10.0, 0.0, &state(), &p, &a, &b).is_err());
        let other = FieldParams::resonant(0.02).unwrap();
        let c = ScalarSet::from_theory(&other, 10.0).unwrap();
        assert!(pointer_prediction(10.0, 0.0, &state(), &p, &a, &c).is_err());
    }
}
