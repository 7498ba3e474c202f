//! Covariance-matrix algebra for zero-mean Gaussian states.

mod sampling;
mod spectrum;
mod state;
mod symplectic;

pub use sampling::{random_gaussian_state, sample_gaussian_state, sample_symplectic};
pub use spectrum::{
    conditional_entropy, entropy, g_function, mean_photon, purify, symplectic_eigenvalues,
    williamson, Williamson, PURITY_TOL,
};
pub use state::{
    make_squeezed_thermal, make_thermal, partial_trace, CovarianceMatrix, ModePartition,
    SYMMETRY_TOL,
};
pub use symplectic::{symplectic_residual, SymplecticForm, SymplecticMatrix, SYMPLECTIC_TOL};

pub(crate) use spectrum::g_unchecked;
pub(crate) use state::check_photons;
