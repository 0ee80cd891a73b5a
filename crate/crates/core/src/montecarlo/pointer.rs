use super::{ConditionalAverage, DensityVector, Matrix2};
use num_complex::Complex64;

/// Eigenbasis `|psi_+->  = (|1> +- e^{i phi'} |2>)/sqrt 2` of the initial
/// interaction Hamiltonian for field phase `phi'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerBasis {
    pub phi_prime: f64,
    /// Columns are `|psi_+>` and `|psi_->` in the `{|1>, |2>}` basis.
    pub transform: Matrix2,
}

impl PointerBasis {
    pub fn new(phi_prime: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = Complex64::from_polar(h, phi_prime);
        let one = Complex64::new(h, 0.0);
        Self {
            phi_prime,
            transform: Matrix2([[one, one], [e, -e]]),
        }
    }

    /// `S^dagger rho S`.
    pub fn to_pointer(&self, rho: &Matrix2) -> Matrix2 {
        self.transform.adjoint() * *rho * self.transform
    }

    /// `S rho' S^dagger`.
    pub fn from_pointer(&self, rho: &Matrix2) -> Matrix2 {
        self.transform * *rho * self.transform.adjoint()
    }

    /// The pure state `|psi_+><psi_+|`.
    pub fn plus_state(&self) -> DensityVector {
        DensityVector::from_parts(0.0, Complex64::from_polar(0.5, self.phi_prime))
            .expect("pure state is valid")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.transform.adjoint() * self.transform - Matrix2::identity()).max_abs() <= tol
    }

    // Coefficients on the pseudospin of rho'_{++}, Re rho'_{+-}, Im rho'_{+-}.
    fn functionals(&self) -> [[f64; 3]; 3] {
        let (s, c) = self.phi_prime.sin_cos();
        [
            [0.5 * c, 0.5 * s, 0.0],
            [0.0, 0.0, 0.5],
            [-0.5 * s, 0.5 * c, 0.0],
        ]
    }
}

/// Standard errors of the pointer-basis entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerErrors {
    pub plus_plus: f64,
    pub plus_minus_re: f64,
    pub plus_minus_im: f64,
}

/// Conditional average expressed in its own pointer basis, per time point.
pub fn pointer_project(cond: &ConditionalAverage) -> Vec<Matrix2> {
    let basis = PointerBasis::new(cond.phi_prime);
    cond.rho_series
        .iter()
        .map(|m| basis.to_pointer(m))
        .collect()
}

pub fn pointer_errors(cond: &ConditionalAverage) -> Vec<PointerErrors> {
    let f = PointerBasis::new(cond.phi_prime).functionals();
    (0..cond.times.len())
        .map(|i| PointerErrors {
            plus_plus: cond.linear(i, f[0]).1,
            plus_minus_re: cond.linear(i, f[1]).1,
            plus_minus_im: cond.linear(i, f[2]).1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plus_state_is_diag_one_zero() {
        let b = PointerBasis::new(1.3);
        let p = b.to_pointer(&b.plus_state().matrix());
        assert!((p.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!(p.get(1, 1).norm() < 1e-15);
        assert!(p.get(0, 1).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn unitary_and_linear_functionals_agree(
            phi in 0.0f64..std::f64::consts::TAU,
            sx in -0.5f64..0.5, sy in -0.5f64..0.5, sz in -0.5f64..0.5,
        ) {
            let b = PointerBasis::new(phi);
            prop_assert!(b.is_unitary(1e-12));
            let d = DensityVector::from_pseudospin([sx, sy, sz]).unwrap();
            let p = b.to_pointer(&d.matrix());
            let f = b.functionals();
            let dot = |c: [f64; 3]| c[0] * sx + c[1] * sy + c[2] * sz;
            prop_assert!((p.get(0, 0).re - (0.5 + dot(f[0]))).abs() < 1e-12);
            prop_assert!((p.get(0, 1).re - dot(f[1])).abs() < 1e-12);
            prop_assert!((p.get(0, 1).im - dot(f[2])).abs() < 1e-12);
            let back = b.from_pointer(&p);
            prop_assert!((back - d.matrix()).max_abs() < 1e-12);
        }
    }
}
