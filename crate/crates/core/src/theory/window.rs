use crate::field::FieldParams;
use crate::{RelaxationCurve, Result};

/// Margin used to turn `<<` into a concrete bound.
pub const MARGIN: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Static,
    Weak,
    ShortTime,
    StrongCoupling,
    Interpolation,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Static => "static",
            Regime::Weak => "weak",
            Regime::ShortTime => "short-time",
            Regime::StrongCoupling => "strong-coupling",
            Regime::Interpolation => "interpolation",
        }
    }
}

/// Closed time interval `[lo, hi]` plus a flag for whether the parameter
/// regime itself is admissible. An inadmissible window contains no time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub admissible: bool,
}

impl Window {
    pub fn new(lo: f64, hi: f64, admissible: bool) -> Self {
        Self { lo, hi, admissible }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.admissible && t >= self.lo && t <= self.hi
    }

    fn strong(params: &FieldParams) -> bool {
        MARGIN * params.nu() <= params.omega0()
    }

    fn inv_alpha(params: &FieldParams) -> f64 {
        let a = params.alpha();
        if a > 0.0 {
            1.0 / a
        } else {
            f64::INFINITY
        }
    }

    fn inv_nu(params: &FieldParams) -> f64 {
        if params.nu() > 0.0 {
            1.0 / params.nu()
        } else {
            f64::INFINITY
        }
    }

    /// Frozen field: `t << 1/alpha`.
    pub fn static_limit(params: &FieldParams) -> Self {
        Self::new(0.0, Self::inv_alpha(params) / MARGIN, true)
    }

    /// `nu >> omega0`, any time.
    pub fn weak(params: &FieldParams) -> Self {
        Self::new(0.0, f64::INFINITY, params.nu() >= MARGIN * params.omega0())
    }

    /// Perturbative short times `D t^3 << 1` under strong coupling.
    pub fn short_time(params: &FieldParams) -> Self {
        let d = params.diffusion();
        let hi = if d > 0.0 {
            (1.0 / (MARGIN * d)).cbrt()
        } else {
            f64::INFINITY
        };
        Self::new(0.0, hi, Self::strong(params))
    }

    /// Dephased regime `t >> 1/alpha` under strong coupling.
    pub fn strong_coupling(params: &FieldParams) -> Self {
        Self::new(
            MARGIN * Self::inv_alpha(params),
            f64::INFINITY,
            Self::strong(params),
        )
    }

    /// `1/omega0^2 << t^2 << D^{-2/3}`.
    pub fn intermediate(params: &FieldParams) -> Self {
        let d = params.diffusion();
        let hi = if d > 0.0 {
            d.powf(-1.0 / 3.0) / MARGIN
        } else {
            f64::INFINITY
        };
        Self::new(MARGIN / params.omega0(), hi, Self::strong(params))
    }

    /// Pointer-state window `1/alpha << t << 1/nu`.
    pub fn plateau(params: &FieldParams) -> Self {
        Self::new(
            MARGIN * Self::inv_alpha(params),
            Self::inv_nu(params) / MARGIN,
            Self::strong(params),
        )
    }

    /// `exp(2 nu t) >> 1`.
    pub fn tail(params: &FieldParams) -> Self {
        let lo = if params.nu() > 0.0 {
            MARGIN.ln() / (2.0 * params.nu())
        } else {
            f64::INFINITY
        };
        Self::new(lo, f64::INFINITY, Self::strong(params))
    }

    /// Interpolation formulas: strong coupling, any time.
    pub fn interpolation(params: &FieldParams) -> Self {
        Self::new(0.0, f64::INFINITY, Self::strong(params))
    }
}

/// A theory curve with its regime and window. Points outside the window are
/// kept and flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryCurve {
    pub regime: Regime,
    pub window: Window,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub outside_window: Vec<bool>,
}

impl TheoryCurve {
    pub fn evaluate<F>(regime: Regime, window: Window, times: &[f64], mut law: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let values = times.iter().map(|&t| law(t)).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            regime,
            window,
            times: times.to_vec(),
            values,
            outside_window: times.iter().map(|&t| !window.contains(t)).collect(),
        })
    }

    pub fn n_outside(&self) -> usize {
        self.outside_window.iter().filter(|&&x| x).count()
    }

    pub fn to_curve(&self) -> Result<RelaxationCurve> {
        RelaxationCurve::new(self.times.clone(), self.values.clone())
    }
}
