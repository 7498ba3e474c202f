//! Capacity bounds for single-mode bosonic Gaussian channels.
//!
//! The crate works entirely in phase space. A zero-mean Gaussian state is a
//! [`CovarianceMatrix`] in the quadrature ordering `(x1, p1, x2, p2, ...)` with
//! the vacuum normalised to the identity, and Gaussian unitaries are
//! [`SymplecticMatrix`] values. Entropies are in nats unless converted with
//! [`Units`].
//!
//! Modules:
//!
//! - [`gaussian`]: state constructors, symplectic spectra, Williamson
//!   decomposition, entropies, purification and random state sampling.
//! - [`channels`]: beam splitter and amplifier channels together with their
//!   weak-complementary and complementary maps.
//! - [`capacities`]: closed-form Holevo, maximal-capacity, upper and lower
//!   bounds on the private capacity and the coherent-information bound.
//! - [`epi`]: Monte Carlo checks of the linear (conditional) entropy power
//!   inequalities plus a truncated Fock-basis entropy oracle.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacities;
pub mod channels;
pub mod epi;
mod error;
pub mod gaussian;

pub use capacities::{BoundResult, CoherentArg, EvalOptions, Units};
pub use channels::{ChannelKind, ChannelOutput, ChannelSpec};
pub use epi::{EpiReport, EpiTrial, Inequality, VerifyConfig};
pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, ModePartition, SymplecticForm, SymplecticMatrix};
