//! Relaxation of a two-level system coupled to an infinite-temperature
//! reservoir described by a complex Gaussian-Markovian (Ornstein-Uhlenbeck)
//! field.
//!
//! Three independent routes compute the population relaxation `N(t)` and
//! the coherence relaxation `R(t)`:
//!
//! * [`montecarlo`]: exact field sampling plus exact pseudospin rotation
//!   along each realisation, averaged over trajectories;
//! * [`pde`]: the partial-average equations on a radial grid in `|Omega_c|`;
//! * [`theory`]: static-limit, weak-coupling, short-time and
//!   strong-coupling closed forms.
//!
//! All quantities use the rms coupling `Omega0` as the frequency unit when
//! driven from the command line, but the library accepts any positive value.

pub mod curve;
mod error;
pub mod field;
pub mod montecarlo;
pub mod pde;
pub mod special;
pub mod theory;

pub use curve::RelaxationCurve;
pub use error::{Error, Result};
pub use field::{FieldParams, FieldState};
