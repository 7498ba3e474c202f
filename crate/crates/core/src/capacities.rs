//! Closed-form capacity quantities for beam splitter and amplifier channels.
//!
//! All functions return nats. [`evaluate_all`] bundles one grid point and can
//! convert to bits.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::channels::{channel_output_entropies, ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::gaussian::{check_photons, g_unchecked, make_thermal};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    pub fn from_nats(self, value: f64) -> f64 {
        match self {
            Units::Nats => value,
            Units::Bits => value / LN_2,
        }
    }
}

/// Second argument of the coherent-information lower bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoherentArg {
    /// `N²`, as printed.
    #[default]
    Square,
    /// `N / 2`, for sensitivity exploration.
    Half,
}

impl CoherentArg {
    pub fn apply(self, n: f64) -> f64 {
        match self {
            CoherentArg::Square => n * n,
            CoherentArg::Half => n / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub units: Units,
    pub coherent_arg: CoherentArg,
}

/// Formulas in terms of plain photon numbers.
pub mod formulas {
    use crate::channels::ChannelKind;
    use crate::gaussian::g_unchecked as g;

    pub fn holevo(kind: ChannelKind, n_e: f64, n: f64) -> f64 {
        match kind {
            ChannelKind::BeamSplitter { tau } => {
                g(tau * n + (1.0 - tau) * n_e) - g((1.0 - tau) * n_e)
            }
            ChannelKind::Amplifier { kappa } => {
                g(kappa * n + (kappa - 1.0) * n_e) - g((kappa - 1.0) * n_e / (2.0 * kappa - 1.0))
            }
        }
    }

    pub fn maximal(kind: ChannelKind, n_e: f64, n: f64) -> f64 {
        match kind {
            ChannelKind::BeamSplitter { tau } => 2.0 * g(tau * n + (1.0 - tau) * n_e),
            ChannelKind::Amplifier { kappa } => 2.0 * g(kappa * n + (kappa - 1.0) * (n_e + 1.0)),
        }
    }

    pub fn moe_sum_lower(kind: ChannelKind, n_e: f64) -> f64 {
        match kind {
            ChannelKind::BeamSplitter { tau } => 2.0 * (1.0 - tau) * g(n_e),
            ChannelKind::Amplifier { kappa } => {
                2.0 * (kappa - 1.0) / (2.0 * kappa - 1.0) * g(n_e) + 2.0 * (2.0 * kappa - 1.0).ln()
            }
        }
    }

    pub fn upper(kind: ChannelKind, n_e: f64, n: f64) -> f64 {
        match kind {
            ChannelKind::BeamSplitter { tau } => {
                2.0 * (g(tau * n + (1.0 - tau) * n_e) - (1.0 - tau) * g(n_e))
            }
            ChannelKind::Amplifier { kappa } => {
                2.0 * (g(kappa * n + (kappa - 1.0) * (n_e + 1.0))
                    - (kappa - 1.0) / (2.0 * kappa - 1.0) * g(n_e)
                    - (2.0 * kappa - 1.0).ln())
            }
        }
    }

    /// General-noise variant for the amplifier, written with the squared logarithm argument.
    pub fn upper_general_amplifier(kappa: f64, n_e_star: f64, n: f64) -> f64 {
        2.0 * g(kappa * n + (kappa - 1.0) * (n_e_star + 1.0))
            - (2.0 * kappa - 2.0) / (2.0 * kappa - 1.0) * g(n_e_star)
            - ((2.0 * kappa - 1.0).powi(2)).ln()
    }

    pub fn lower_approx(kind: ChannelKind, n_e: f64, n: f64) -> f64 {
        2.0 * holevo(kind, n_e, n)
    }
}

fn thermal_noise(spec: &ChannelSpec, what: &str) -> Result<f64> {
    spec.thermal_photons().ok_or_else(|| {
        Error::UnsupportedFormula(format!("{what} is stated for thermal environments only"))
    })
}

fn noise_photons(spec: &ChannelSpec) -> f64 {
    spec.thermal_photons()
        .unwrap_or_else(|| spec.effective_noise_photons())
}

/// One-shot Holevo quantity for a thermal environment.
pub fn holevo_capacity(spec: &ChannelSpec, n: f64) -> Result<f64> {
    check_photons(n, "input photon number")?;
    Ok(formulas::holevo(spec.kind(), thermal_noise(spec, "holevo capacity")?, n))
}

/// `2 g(output photons)`: both channel and complement at maximal entropy.
pub fn maximal_capacity(spec: &ChannelSpec, n: f64) -> Result<f64> {
    check_photons(n, "input photon number")?;
    Ok(formulas::maximal(spec.kind(), noise_photons(spec), n))
}

/// Lower bound on the sum of the channel's and complement's minimum output entropies.
pub fn moe_sum_lower(spec: &ChannelSpec) -> f64 {
    formulas::moe_sum_lower(spec.kind(), noise_photons(spec))
}

/// Private-capacity upper bound for a thermal environment.
pub fn private_upper(spec: &ChannelSpec, n: f64) -> Result<f64> {
    check_photons(n, "input photon number")?;
    Ok(formulas::upper(spec.kind(), thermal_noise(spec, "private_upper")?, n))
}

/// Private-capacity upper bound for an arbitrary single-mode Gaussian
/// environment, through `N_E* = (√det Γ_E − 1)/2`.
pub fn private_upper_general(spec: &ChannelSpec, n: f64) -> Result<f64> {
    check_photons(n, "input photon number")?;
    let n_e_star = spec.effective_noise_photons();
    Ok(match spec.kind() {
        kind @ ChannelKind::BeamSplitter { .. } => formulas::upper(kind, n_e_star, n),
        ChannelKind::Amplifier { kappa } => formulas::upper_general_amplifier(kappa, n_e_star, n),
    })
}

/// Approximate private-capacity lower bound.
pub fn private_lower_approx(spec: &ChannelSpec, n: f64) -> Result<f64> {
    check_photons(n, "input photon number")?;
    Ok(formulas::lower_approx(spec.kind(), noise_photons(spec), n))
}

/// `S(Λ(ρ)) − S(Λᶜ(ρ))` for the thermal input with mean photon number `n`.
pub fn coherent_information(spec: &ChannelSpec, n: f64) -> Result<f64> {
    let e = channel_output_entropies(&make_thermal(n)?, spec)?;
    Ok(e.output - e.complement)
}

/// `I_c(N) − I_c(N²)`.
pub fn coherent_lower_bound(spec: &ChannelSpec, n: f64) -> Result<f64> {
    coherent_lower_bound_with(spec, n, CoherentArg::Square)
}

pub fn coherent_lower_bound_with(spec: &ChannelSpec, n: f64, arg: CoherentArg) -> Result<f64> {
    Ok(coherent_information(spec, n)? - coherent_information(spec, arg.apply(n))?)
}

/// All bounds at one `(channel, N)` point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub channel: ChannelKind,
    /// `N_E` for thermal environments, `N_E*` otherwise.
    pub noise_photons: f64,
    pub thermal_environment: bool,
    #[serde(rename = "N")]
    pub n: f64,
    /// `None` when the environment is not thermal.
    pub holevo: Option<f64>,
    pub maximal: f64,
    pub moe_sum_lower: f64,
    pub upper: f64,
    pub lower_approx: f64,
    pub coherent_info: f64,
    pub coherent_lower: f64,
    pub units: Units,
}

pub fn evaluate_all(spec: &ChannelSpec, n: f64) -> Result<BoundResult> {
    evaluate_with(spec, n, &EvalOptions::default())
}

pub fn evaluate_with(spec: &ChannelSpec, n: f64, opts: &EvalOptions) -> Result<BoundResult> {
    check_photons(n, "input photon number")?;
    let thermal = spec.thermal_photons();
    let upper = match thermal {
        Some(_) => private_upper(spec, n)?,
        None => private_upper_general(spec, n)?,
    };
    let holevo = match thermal {
        Some(_) => Some(holevo_capacity(spec, n)?),
        None => None,
    };
    let coherent_info = coherent_information(spec, n)?;
    let coherent_lower = coherent_info - coherent_information(spec, opts.coherent_arg.apply(n))?;
    let u = opts.units;
    Ok(BoundResult {
        channel: spec.kind(),
        noise_photons: noise_photons(spec),
        thermal_environment: thermal.is_some(),
        n,
        holevo: holevo.map(|h| u.from_nats(h)),
        maximal: u.from_nats(maximal_capacity(spec, n)?),
        moe_sum_lower: u.from_nats(moe_sum_lower(spec)),
        upper: u.from_nats(upper),
        lower_approx: u.from_nats(private_lower_approx(spec, n)?),
        coherent_info: u.from_nats(coherent_info),
        coherent_lower: u.from_nats(coherent_lower),
        units: u,
    })
}

/// [`evaluate_with`] over a grid of input photon numbers, in grid order.
pub fn evaluate_grid(spec: &ChannelSpec, ns: &[f64], opts: &EvalOptions) -> Result<Vec<BoundResult>> {
    ns.par_iter().map(|&n| evaluate_with(spec, n, opts)).collect()
}

/// `g`'s scaling gap `g(λx) − λ g(x)`, which is the beam splitter's
/// upper-minus-lower gap divided by two at `λ = 1 − τ`.
pub fn scaling_gap(lambda: f64, x: f64) -> f64 {
    g_unchecked(lambda * x) - lambda * g_unchecked(x)
}
