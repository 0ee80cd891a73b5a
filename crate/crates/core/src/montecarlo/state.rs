use crate::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

const NORM_TOL: f64 = 1e-12;

/// Two-level state stored as the column `(rho_12, n, rho_21)` with
/// `n = rho_11 - rho_22`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityVector {
    r1: Complex64,
    r0: f64,
    rm1: Complex64,
}

impl DensityVector {
    /// Validates `rho_21 = conj(rho_12)` and `|s| <= 1`.
    pub fn new(r1: Complex64, r0: f64, rm1: Complex64) -> Result<Self> {
        if !(r1.re.is_finite() && r1.im.is_finite() && r0.is_finite()) {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        if (rm1 - r1.conj()).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "rho_21 = {rm1} is not the conjugate of rho_12 = {r1}"
            )));
        }
        let s = Self { r1, r0, rm1 };
        let len = s.bloch_length();
        if len > 1.0 + NORM_TOL {
            return Err(Error::InvalidState(format!(
                "pseudospin length {len} exceeds 1"
            )));
        }
        Ok(s)
    }

    /// State with population difference `n` and coherence `rho_21`.
    pub fn from_parts(n: f64, rho21: Complex64) -> Result<Self> {
        Self::new(rho21.conj(), n, rho21)
    }

    /// State with pseudospin `(2 Re rho_21, 2 Im rho_21, n)`.
    pub fn from_pseudospin(s: [f64; 3]) -> Result<Self> {
        Self::from_parts(s[2], Complex64::new(0.5 * s[0], 0.5 * s[1]))
    }

    pub fn from_matrix(m: &Matrix2) -> Result<Self> {
        if (m.trace() - 1.0).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {} is not 1", m.trace())));
        }
        if !m.is_hermitian(NORM_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        Self::from_parts(m.0[0][0].re - m.0[1][1].re, m.0[1][0])
    }

    /// Fully inverted state `|1><1|`, `n = 1`.
    pub fn excited() -> Self {
        Self {
            r1: Complex64::new(0.0, 0.0),
            r0: 1.0,
            rm1: Complex64::new(0.0, 0.0),
        }
    }

    /// Equal superposition `(|1> + |2>)/sqrt 2` with real `rho_21 = 1/2`.
    pub fn coherent() -> Self {
        Self {
            r1: Complex64::new(0.5, 0.0),
            r0: 0.0,
            rm1: Complex64::new(0.5, 0.0),
        }
    }

    pub fn rho12(&self) -> Complex64 {
        self.r1
    }

    pub fn rho21(&self) -> Complex64 {
        self.rm1
    }

    pub fn population_difference(&self) -> f64 {
        self.r0
    }

    /// The column `(r_1, r_0, r_-1)`.
    pub fn as_column(&self) -> [Complex64; 3] {
        [self.r1, Complex64::new(self.r0, 0.0), self.rm1]
    }

    pub fn pseudospin(&self) -> [f64; 3] {
        [2.0 * self.rm1.re, 2.0 * self.rm1.im, self.r0]
    }

    pub fn bloch_length(&self) -> f64 {
        let s = self.pseudospin();
        (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt()
    }

    pub fn matrix(&self) -> Matrix2 {
        Matrix2::density(self.r0, self.rm1)
    }
}

/// Complex 2x2 matrix in the `{|1>, |2>}` basis, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    /// Density matrix with `rho_11 = (1+n)/2` and the given `rho_21`.
    pub fn density(n: f64, rho21: Complex64) -> Self {
        Self([
            [Complex64::new(0.5 * (1.0 + n), 0.0), rho21.conj()],
            [rho21, Complex64::new(0.5 * (1.0 - n), 0.0)],
        ])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (*self - self.adjoint()).max_abs() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1].norm();
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mean - r, mean + r]
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += rhs.0[i][j];
            }
        }
        Matrix2(out)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell -= rhs.0[i][j];
            }
        }
        Matrix2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_unphysical() {
        assert!(DensityVector::from_parts(1.2, Complex64::new(0.0, 0.0)).is_err());
        assert!(DensityVector::from_parts(0.0, Complex64::new(0.6, 0.0)).is_err());
        assert!(
            DensityVector::new(Complex64::new(0.1, 0.1), 0.0, Complex64::new(0.1, 0.1)).is_err()
        );
    }

    proptest! {
        #[test]
        fn matrix_view_is_a_density_matrix(
            theta in 0.0f64..std::f64::consts::PI,
            phi in 0.0f64..std::f64::consts::TAU,
            len in 0.0f64..1.0,
        ) {
            let s = [len * theta.sin() * phi.cos(), len * theta.sin() * phi.sin(), len * theta.cos()];
            let d = DensityVector::from_pseudospin(s).unwrap();
            let m = d.matrix();
            prop_assert!(m.is_hermitian(1e-15));
            prop_assert!((m.trace().re - 1.0).abs() < 1e-15);
            prop_assert!(m.hermitian_eigenvalues()[0] >= -1e-15);
            let back = DensityVector::from_matrix(&m).unwrap();
            let s2 = back.pseudospin();
            for k in 0..3 {
                prop_assert!((s2[k] - s[k]).abs() < 1e-15);
            }
        }
    }
}
