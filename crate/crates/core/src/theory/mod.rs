//! Closed-form and asymptotic relaxation laws, each tagged with the time
//! window in which it is expected to hold.
//!
//! Asymptotic conditions `a << t << b` are turned into concrete windows with
//! a factor-of-3 margin on each side: `[3a, b/3]`.

mod closed;
mod pointer;
mod window;

pub use closed::{
    j_short_time, k0_of_t, k0_profile, k0_small_rate, k1_of_t, k1_of_t_closed, k1_profile,
    n_static, r_intermediate, r_interpolated, r_plateau, r_static, r_tail, short_time_profiles,
    weak_coupling, Interpolation, ShortTimeProfiles,
};
pub use pointer::{pointer_prediction, PointerPrediction, ScalarSet, ScalarSource};
pub use window::{Regime, TheoryCurve, Window};
