//! Deterministic solution of the radial partial-average equations.
//!
//! The population pair `(N, E')` and the coherence triple `(P, Q', R)` are
//! real functions of the field magnitude `omega` (`E' = iE`, `Q' = iQ`).
//! Each time step applies the exact pointwise rotation generated by the
//! coupling between channels, sandwiched between implicit diffusion steps
//! of the radial generators `L_k`.

mod grid;
mod jfunc;
mod operator;
mod solver;

pub use grid::{RadialGrid, MAX_SPACING, MIN_OMEGA_MAX};
pub use jfunc::{
    extract_j, extract_j_with_level, n_static_zero_neighbourhoods, n_static_zeros, JExtraction,
    DEFAULT_ZERO_LEVEL, MAX_COUPLING_RATIO,
};
pub use operator::{build_lk, Tridiagonal};
pub use solver::{
    solve_coherence, solve_population, solve_scalars, CoherenceSolution, PdeConfig,
    PopulationSolution, RadialProfiles, ScalarOutputs, ScalarPoint, DEFAULT_DT,
};
