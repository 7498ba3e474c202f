//! Beam splitter and amplifier channels in phase space.
//!
//! A channel acts on the input mode `A` and a single environment mode `E`
//! through a two-mode symplectic whose outputs are ordered `(B, F)`: `B` is
//! the channel output, `F` the environment-side output. The complementary
//! channel additionally purifies `E` with a reference mode `C` which passes
//! through untouched, giving a two-mode `(F, C)` output.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{entropy, purify, symplectic_eigenvalues, CovarianceMatrix, SymplecticMatrix};

/// Largest amplifier gain accepted by validation.
pub const KAPPA_MAX: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelKind {
    /// Transmissivity `τ ∈ [0, 1]`.
    BeamSplitter { tau: f64 },
    /// Gain `κ ∈ [1, KAPPA_MAX]`; `κ = 1` is the identity channel.
    Amplifier { kappa: f64 },
}

impl ChannelKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelKind::BeamSplitter { tau } => {
                if !(0.0..=1.0).contains(&tau) {
                    return Err(Error::domain(format!("tau must lie in [0, 1], got {tau}")));
                }
            }
            ChannelKind::Amplifier { kappa } => {
                if !(1.0..=KAPPA_MAX).contains(&kappa) {
                    return Err(Error::domain(format!(
                        "kappa must lie in [1, {KAPPA_MAX:e}], got {kappa}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `τ` or `κ`.
    pub fn parameter(&self) -> f64 {
        match *self {
            ChannelKind::BeamSplitter { tau } => tau,
            ChannelKind::Amplifier { kappa } => kappa,
        }
    }

    pub fn symplectic(&self) -> Result<SymplecticMatrix> {
        match *self {
            ChannelKind::BeamSplitter { tau } => beam_splitter_symplectic(tau),
            ChannelKind::Amplifier { kappa } => amplifier_symplectic(kappa),
        }
    }
}

/// `[[√τ I, √(1−τ) I], [−√(1−τ) I, √τ I]]`.
pub fn beam_splitter_symplectic(tau: f64) -> Result<SymplecticMatrix> {
    ChannelKind::BeamSplitter { tau }.validate()?;
    Ok(SymplecticMatrix::mixer(tau))
}

/// `[[√κ I, √(κ−1) Z], [√(κ−1) Z, √κ I]]` with `Z = diag(1, −1)`.
pub fn amplifier_symplectic(kappa: f64) -> Result<SymplecticMatrix> {
    ChannelKind::Amplifier { kappa }.validate()?;
    Ok(SymplecticMatrix::gain_block(kappa.sqrt(), (kappa - 1.0).sqrt()))
}

/// A channel together with its single-mode environment state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    kind: ChannelKind,
    environment: CovarianceMatrix,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, environment: CovarianceMatrix) -> Result<Self> {
        kind.validate()?;
        if environment.n_modes() != 1 {
            return Err(Error::domain(format!(
                "environment must be single-mode, got {} modes",
                environment.n_modes()
            )));
        }
        symplectic_eigenvalues(&environment)?;
        Ok(Self { kind, environment })
    }

    pub fn beam_splitter(tau: f64, environment: CovarianceMatrix) -> Result<Self> {
        Self::new(ChannelKind::BeamSplitter { tau }, environment)
    }

    pub fn amplifier(kappa: f64, environment: CovarianceMatrix) -> Result<Self> {
        Self::new(ChannelKind::Amplifier { kappa }, environment)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn environment(&self) -> &CovarianceMatrix {
        &self.environment
    }

    pub fn symplectic(&self) -> SymplecticMatrix {
        self.kind.symplectic().expect("validated at construction")
    }

    /// Mean photon number of a thermal environment, `None` otherwise.
    pub fn thermal_photons(&self) -> Option<f64> {
        if self.environment.is_thermal() {
            Some(((self.environment.matrix()[(0, 0)] - 1.0) / 2.0).max(0.0))
        } else {
            None
        }
    }

    /// `N_E* = (√det Γ_E − 1)/2`, the thermal photon number carried by the
    /// environment's symplectic eigenvalue.
    pub fn effective_noise_photons(&self) -> f64 {
        ((self.environment.determinant().max(1.0).sqrt() - 1.0) / 2.0).max(0.0)
    }

    /// The same channel with its environment replaced.
    pub fn with_environment(&self, environment: CovarianceMatrix) -> Result<Self> {
        Self::new(self.kind, environment)
    }
}

/// Channel output, weak-complementary output, and optionally the complementary
/// `(F, C)` output.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOutput {
    pub output: CovarianceMatrix,
    pub weak_complement: CovarianceMatrix,
    pub complement: Option<CovarianceMatrix>,
}

fn check_input(gamma_a: &CovarianceMatrix) -> Result<()> {
    if gamma_a.n_modes() != 1 {
        return Err(Error::domain(format!(
            "channel input must be single-mode, got {} modes",
            gamma_a.n_modes()
        )));
    }
    Ok(())
}

/// Closed-form `(B, F)` covariances used to cross-check the symplectic route.
pub fn closed_form_outputs(
    gamma_a: &CovarianceMatrix,
    spec: &ChannelSpec,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let a = gamma_a.matrix();
    let e = spec.environment.matrix();
    match spec.kind {
        ChannelKind::BeamSplitter { tau } => (
            a * tau + e * (1.0 - tau),
            a * (1.0 - tau) + e * tau,
        ),
        ChannelKind::Amplifier { kappa } => {
            let z = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[1.0, -1.0]));
            (
                a * kappa + &z * e * &z * (kappa - 1.0),
                &z * a * &z * (kappa - 1.0) + e * kappa,
            )
        }
    }
}

/// Propagates `Γ_A ⊗ Γ_E` through the channel symplectic.
pub fn propagate(
    gamma_a: &CovarianceMatrix,
    spec: &ChannelSpec,
    with_complement: bool,
) -> Result<ChannelOutput> {
    check_input(gamma_a)?;
    let s = spec.symplectic();
    let joint = gamma_a.direct_sum(&spec.environment).transformed(&s);
    let output = joint.reduced(&[0])?;
    let weak_complement = joint.reduced(&[1])?;

    if cfg!(debug_assertions) {
        let (b, f) = closed_form_outputs(gamma_a, spec);
        let scale = b.amax().max(f.amax()).max(1.0);
        debug_assert!((output.matrix() - b).amax() <= 1e-12 * scale);
        debug_assert!((weak_complement.matrix() - f).amax() <= 1e-12 * scale);
    }

    let complement = if with_complement {
        let psi_ec = purify(&spec.environment)?;
        let lift = s.direct_sum(&SymplecticMatrix::identity(1));
        let global = gamma_a.direct_sum(&psi_ec).transformed(&lift);
        Some(global.reduced(&[1, 2])?)
    } else {
        None
    };

    Ok(ChannelOutput {
        output,
        weak_complement,
        complement,
    })
}

/// Output on mode `B`.
pub fn apply_channel(gamma_a: &CovarianceMatrix, spec: &ChannelSpec) -> Result<CovarianceMatrix> {
    Ok(propagate(gamma_a, spec, false)?.output)
}

/// Output on mode `F` with the mixed environment inserted directly.
pub fn weak_complementary(
    gamma_a: &CovarianceMatrix,
    spec: &ChannelSpec,
) -> Result<CovarianceMatrix> {
    Ok(propagate(gamma_a, spec, false)?.weak_complement)
}

/// Two-mode `(F, C)` output of the purified complementary channel.
pub fn complementary(gamma_a: &CovarianceMatrix, spec: &ChannelSpec) -> Result<CovarianceMatrix> {
    Ok(propagate(gamma_a, spec, true)?
        .complement
        .expect("requested complement"))
}

/// Entropies of the channel, weak-complementary and complementary outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputEntropies {
    pub output: f64,
    pub weak_complement: f64,
    pub complement: f64,
}

pub fn channel_output_entropies(
    gamma_a: &CovarianceMatrix,
    spec: &ChannelSpec,
) -> Result<OutputEntropies> {
    let out = propagate(gamma_a, spec, true)?;
    Ok(OutputEntropies {
        output: entropy(&out.output)?,
        weak_complement: entropy(&out.weak_complement)?,
        complement: entropy(out.complement.as_ref().expect("requested complement"))?,
    })
}
