use super::DensityVector;
use crate::field::{FieldParams, FieldState};
use crate::{Error, Result};

/// Default Monte Carlo step: resolves both the Rabi rotation and the field
/// decorrelation, `dt = min(0.02/Omega0, 0.02/nu)`.
pub fn default_dt(params: &FieldParams) -> f64 {
    let by_rabi = 0.02 / params.omega0();
    if params.nu() > 0.0 {
        by_rabi.min(0.02 / params.nu())
    } else {
        by_rabi
    }
}

/// Finite rotation generated by `ds/dt = s x B` with `int B dt = w`.
///
/// The pseudospin precesses about `w` by the angle `-|w|`.
#[derive(Debug, Clone, Copy)]
pub struct Precession {
    axis: [f64; 3],
    cos: f64,
    sin: f64,
}

impl Precession {
    pub fn new(w: [f64; 3]) -> Self {
        let angle = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if angle == 0.0 {
            return Self {
                axis: [0.0, 0.0, 1.0],
                cos: 1.0,
                sin: 0.0,
            };
        }
        let (sin, cos) = angle.sin_cos();
        Self {
            axis: [w[0] / angle, w[1] / angle, w[2] / angle],
            cos,
            sin,
        }
    }

    #[inline]
    pub fn apply(&self, s: &mut [f64; 3]) {
        let a = &self.axis;
        // s cos + (s x a) sin + a (a . s)(1 - cos)
        let cross = [
            s[1] * a[2] - s[2] * a[1],
            s[2] * a[0] - s[0] * a[2],
            s[0] * a[1] - s[1] * a[0],
        ];
        let proj = (a[0] * s[0] + a[1] * s[1] + a[2] * s[2]) * (1.0 - self.cos);
        for k in 0..3 {
            s[k] = s[k] * self.cos + cross[k] * self.sin + a[k] * proj;
        }
    }
}

/// Propagate a state along a sampled field path.
///
/// Over each step `[t_i, t_i + dt]` the field is held at the mean of its two
/// endpoint samples and the pseudospin is rotated exactly about
/// `B = (u, v, delta0)`. Returns `path.len()` states including the initial one.
pub fn propagate(
    initial: &DensityVector,
    path: &[FieldState],
    dt: f64,
    delta0: f64,
) -> Result<Vec<DensityVector>> {
    let len = initial.bloch_length();
    if len > 1.0 + 1e-12 {
        return Err(Error::InvalidState(format!(
            "pseudospin length {len} exceeds 1"
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let mut out = Vec::with_capacity(path.len().max(1));
    out.push(*initial);
    let mut s = initial.pseudospin();
    for pair in path.windows(2) {
        let u = 0.5 * (pair[0].u + pair[1].u);
        let v = 0.5 * (pair[0].v + pair[1].v);
        Precession::new([u * dt, v * dt, delta0 * dt]).apply(&mut s);
        // Rounding can push |s| a hair above 1; renormalise only then.
        let norm = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        if norm > 1.0 {
            s.iter_mut().for_each(|x| *x /= norm);
        }
        out.push(DensityVector::from_pseudospin(s)?);
    }
    Ok(out)
}
