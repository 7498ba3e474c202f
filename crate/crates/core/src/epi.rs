//! Numerical checks of the linear entropy power inequalities.
//!
//! Each `check_*` function evaluates one inequality on concrete covariance
//! matrices and returns the two sides as an [`EpiTrial`].
//! [`monte_carlo_verify`] samples many such trials and summarises the slacks.
//!
//! Conditional trials use the four-mode layout `(X1, Z1, X2, Z2)`; the mixer
//! acts on modes 0 and 2, mode 0 is the output and mode 2 is discarded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::channels::{apply_channel, complementary, ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::gaussian::{
    check_photons, conditional_entropy, entropy, g_unchecked, make_thermal,
    sample_gaussian_state, sample_symplectic, CovarianceMatrix, ModePartition, SymplecticMatrix,
};

/// Default violation tolerance in nats.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Wider band used next to the degenerate amplifier limit `κ → 1`.
pub const DEGENERATE_KAPPA_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Inequality {
    QepiBs,
    QepiAmp,
    CqepiBs,
    CqepiAmp,
    MoeChainBs,
    WcChainBs,
}

impl Inequality {
    pub const ALL: [Inequality; 6] = [
        Inequality::QepiBs,
        Inequality::QepiAmp,
        Inequality::CqepiBs,
        Inequality::CqepiAmp,
        Inequality::MoeChainBs,
        Inequality::WcChainBs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::QepiBs => "QEPI_BS",
            Inequality::QepiAmp => "QEPI_AMP",
            Inequality::CqepiBs => "CQEPI_BS",
            Inequality::CqepiAmp => "CQEPI_AMP",
            Inequality::MoeChainBs => "MOE_CHAIN_BS",
            Inequality::WcChainBs => "WC_CHAIN_BS",
        }
    }

    pub fn is_amplifier(self) -> bool {
        matches!(self, Inequality::QepiAmp | Inequality::CqepiAmp)
    }

    /// Default sampling range of `τ` or `κ`.
    pub fn default_parameter_range(self) -> (f64, f64) {
        if self.is_amplifier() {
            (1.0, 10.0)
        } else {
            (0.0, 1.0)
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    /// Accepts `QEPI_BS` as well as `qepi-bs`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Inequality::ALL
            .into_iter()
            .find(|i| i.name() == norm)
            .ok_or_else(|| Error::domain(format!("unknown inequality family {s:?}")))
    }
}

/// One evaluation of an inequality `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpiTrial {
    pub inequality: Inequality,
    /// `τ` or `κ`.
    pub parameter: f64,
    pub inputs: Vec<CovarianceMatrix>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl EpiTrial {
    fn new(inequality: Inequality, parameter: f64, inputs: Vec<CovarianceMatrix>, lhs: f64, rhs: f64) -> Self {
        Self {
            inequality,
            parameter,
            inputs,
            lhs,
            rhs,
            slack: lhs - rhs,
        }
    }

    pub fn is_violation(&self, tolerance: f64) -> bool {
        self.slack < -tolerance
    }
}

fn amplifier_weights(kappa: f64) -> (f64, f64, f64) {
    let d = 2.0 * kappa - 1.0;
    (kappa / d, (kappa - 1.0) / d, d.ln())
}

fn single_mode(gamma: &CovarianceMatrix, what: &str) -> Result<()> {
    if gamma.n_modes() != 1 {
        return Err(Error::domain(format!("{what} must be single-mode")));
    }
    Ok(())
}

fn two_mode(gamma: &CovarianceMatrix, what: &str) -> Result<()> {
    if gamma.n_modes() != 2 {
        return Err(Error::domain(format!("{what} must be a two-mode (X, Z) state")));
    }
    Ok(())
}

/// `S(ρ₁ ⊞_τ ρ₂) ≥ τ S(ρ₁) + (1 − τ) S(ρ₂)`.
pub fn check_qepi_bs(g1: &CovarianceMatrix, g2: &CovarianceMatrix, tau: f64) -> Result<EpiTrial> {
    single_mode(g1, "first input")?;
    single_mode(g2, "second input")?;
    let spec = ChannelSpec::beam_splitter(tau, g2.clone())?;
    let lhs = entropy(&apply_channel(g1, &spec)?)?;
    let rhs = tau * entropy(g1)? + (1.0 - tau) * entropy(g2)?;
    Ok(EpiTrial::new(Inequality::QepiBs, tau, vec![g1.clone(), g2.clone()], lhs, rhs))
}

/// `S(ρ₁ ⊞_κ ρ₂) ≥ κ/(2κ−1) S(ρ₁) + (κ−1)/(2κ−1) S(ρ₂) + ln(2κ − 1)`.
pub fn check_qepi_amp(g1: &CovarianceMatrix, g2: &CovarianceMatrix, kappa: f64) -> Result<EpiTrial> {
    single_mode(g1, "first input")?;
    single_mode(g2, "second input")?;
    let spec = ChannelSpec::amplifier(kappa, g2.clone())?;
    let lhs = entropy(&apply_channel(g1, &spec)?)?;
    let (w1, w2, offset) = amplifier_weights(kappa);
    let rhs = w1 * entropy(g1)? + w2 * entropy(g2)? + offset;
    Ok(EpiTrial::new(Inequality::QepiAmp, kappa, vec![g1.clone(), g2.clone()], lhs, rhs))
}

/// Mixes `X1` and `X2` of `Γ_{X1Z1} ⊗ Γ_{X2Z2}` and returns
/// `S(out | Z1 Z2)` together with `S(X1 | Z1)` and `S(X2 | Z2)`.
fn conditional_parts(
    g1: &CovarianceMatrix,
    g2: &CovarianceMatrix,
    mixer: &SymplecticMatrix,
) -> Result<(f64, f64, f64)> {
    two_mode(g1, "first input")?;
    two_mode(g2, "second input")?;
    let joint = g1.direct_sum(g2).transformed(&mixer.embed(4, &[0, 2])?);
    let lhs = entropy(&joint.reduced(&[0, 1, 3])?)? - entropy(&joint.reduced(&[1, 3])?)?;
    let given_z = ModePartition::new(2, vec![0], vec![1])?;
    Ok((lhs, conditional_entropy(g1, &given_z)?, conditional_entropy(g2, &given_z)?))
}

/// `S(ρ₁ ⊞_τ ρ₂ | Z1 Z2) ≥ τ S(X1 | Z1) + (1 − τ) S(X2 | Z2)`.
pub fn check_cqepi_bs(g1: &CovarianceMatrix, g2: &CovarianceMatrix, tau: f64) -> Result<EpiTrial> {
    let mixer = ChannelKind::BeamSplitter { tau }.symplectic()?;
    let (lhs, c1, c2) = conditional_parts(g1, g2, &mixer)?;
    let rhs = tau * c1 + (1.0 - tau) * c2;
    Ok(EpiTrial::new(Inequality::CqepiBs, tau, vec![g1.clone(), g2.clone()], lhs, rhs))
}

/// Amplifier form of the conditional inequality.
pub fn check_cqepi_amp(g1: &CovarianceMatrix, g2: &CovarianceMatrix, kappa: f64) -> Result<EpiTrial> {
    let mixer = ChannelKind::Amplifier { kappa }.symplectic()?;
    let (lhs, c1, c2) = conditional_parts(g1, g2, &mixer)?;
    let (w1, w2, offset) = amplifier_weights(kappa);
    let rhs = w1 * c1 + w2 * c2 + offset;
    Ok(EpiTrial::new(Inequality::CqepiAmp, kappa, vec![g1.clone(), g2.clone()], lhs, rhs))
}

fn chain_noise(spec: &ChannelSpec) -> Result<(f64, f64)> {
    let ChannelKind::BeamSplitter { tau } = spec.kind() else {
        return Err(Error::domain("chain inequalities are checked for the beam splitter"));
    };
    let n_e = spec.thermal_photons().ok_or_else(|| {
        Error::UnsupportedFormula("chain inequalities need a thermal environment".into())
    })?;
    Ok((tau, n_e))
}

/// `S(Λ(ρ)) ≥ (1 − τ) g(N_E)`.
pub fn check_moe_chain(gamma_a: &CovarianceMatrix, spec: &ChannelSpec) -> Result<EpiTrial> {
    check_chain_product(Inequality::MoeChainBs, std::slice::from_ref(gamma_a), spec)
}

/// `S(Λᶜ(ρ)) ≥ (1 − τ) g(N_E)` on the purified `(F, C)` output.
pub fn check_wc_chain(gamma_a: &CovarianceMatrix, spec: &ChannelSpec) -> Result<EpiTrial> {
    check_chain_product(Inequality::WcChainBs, std::slice::from_ref(gamma_a), spec)
}

/// n-copy chain check on a product input `ρ₁ ⊗ ... ⊗ ρ_n`:
/// output entropy of `Λ^{⊗n}` (or `Λᶜ^{⊗n}`) against `n (1 − τ) g(N_E)`.
pub fn check_chain_product(
    inequality: Inequality,
    inputs: &[CovarianceMatrix],
    spec: &ChannelSpec,
) -> Result<EpiTrial> {
    let (tau, n_e) = chain_noise(spec)?;
    if inputs.is_empty() {
        return Err(Error::domain("need at least one channel use"));
    }
    let mut lhs = 0.0;
    for gamma_a in inputs {
        // Entropy is additive over the product outputs.
        lhs += match inequality {
            Inequality::MoeChainBs => entropy(&apply_channel(gamma_a, spec)?)?,
            Inequality::WcChainBs => entropy(&complementary(gamma_a, spec)?)?,
            other => return Err(Error::domain(format!("{other} is not a chain inequality"))),
        };
    }
    let rhs = inputs.len() as f64 * (1.0 - tau) * g_unchecked(n_e);
    Ok(EpiTrial::new(inequality, tau, inputs.to_vec(), lhs, rhs))
}

/// Entropy of the thermal photon-number distribution `p_k = N^k/(N+1)^{k+1}`
/// truncated to `k < cutoff` and renormalised.
pub fn fock_entropy_oracle(n: f64, cutoff: usize) -> Result<f64> {
    check_photons(n, "mean photon number")?;
    if cutoff < 2 {
        return Err(Error::domain(format!("cutoff must be >= 2, got {cutoff}")));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    let ln_ratio = (n / (n + 1.0)).ln();
    let ln_p0 = -(n + 1.0).ln();
    let logs: Vec<f64> = (0..cutoff).map(|k| ln_p0 + k as f64 * ln_ratio).collect();
    let total: f64 = logs.iter().map(|l| l.exp()).sum();
    let ln_total = total.ln();
    Ok(-logs
        .iter()
        .map(|&l| {
            let lp = l - ln_total;
            lp.exp() * lp
        })
        .sum::<f64>())
}

/// Single-mode-conditioned input `Γ_{XZ}`: a two-mode squeezer applied to a
/// product of thermal states, followed by independent local symplectics.
pub fn sample_conditional_state<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: f64,
    max_r: f64,
) -> Result<CovarianceMatrix> {
    let na = max_n * rng.random::<f64>();
    let nb = max_n * rng.random::<f64>();
    let r = max_r * rng.random::<f64>();
    let local = sample_symplectic(rng, 1, max_r)?.direct_sum(&sample_symplectic(rng, 1, max_r)?);
    let s = local.compose(&SymplecticMatrix::two_mode_squeezer(r))?;
    Ok(make_thermal(na)?.direct_sum(&make_thermal(nb)?).transformed(&s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub inequality: Inequality,
    pub trials: u64,
    pub max_n: f64,
    pub max_r: f64,
    /// Sampling range `[lo, hi)` of `τ` or `κ`.
    pub parameter_range: (f64, f64),
    pub seed: u64,
    pub tolerance: f64,
}

impl VerifyConfig {
    /// 10⁴ trials, `max_n = 5`, `max_r = 1.5`, default tolerance and range.
    pub fn new(inequality: Inequality, seed: u64) -> Self {
        Self {
            inequality,
            trials: 10_000,
            max_n: 5.0,
            max_r: 1.5,
            parameter_range: inequality.default_parameter_range(),
            seed,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("trials must be >= 1"));
        }
        for (v, what) in [(self.max_n, "max_n"), (self.max_r, "max_r"), (self.tolerance, "tolerance")] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::domain(format!("{what} must be finite and >= 0, got {v}")));
            }
        }
        let (lo, hi) = self.parameter_range;
        if !(lo <= hi) {
            return Err(Error::domain(format!("empty parameter range [{lo}, {hi})")));
        }
        let probe = |p: f64| {
            if self.inequality.is_amplifier() {
                ChannelKind::Amplifier { kappa: p }.validate()
            } else {
                ChannelKind::BeamSplitter { tau: p }.validate()
            }
        };
        probe(lo)?;
        probe(hi)
    }
}

/// Aggregate of one Monte Carlo campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpiReport {
    pub inequality: Inequality,
    pub trials: u64,
    pub violations: u64,
    pub min_slack: f64,
    pub mean_slack: f64,
    pub seed: u64,
    pub tolerance: f64,
    pub max_n: f64,
    pub max_r: f64,
    pub parameter_range: (f64, f64),
}

/// Runs trial `index` of a campaign. Each trial owns a ChaCha8 generator on
/// stream `index` of `seed`, so results do not depend on scheduling.
pub fn run_trial(cfg: &VerifyConfig, index: u64) -> Result<EpiTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let (lo, hi) = cfg.parameter_range;
    let p = lo + (hi - lo) * rng.random::<f64>();
    let rng = &mut rng;
    match cfg.inequality {
        Inequality::QepiBs | Inequality::QepiAmp => {
            let g1 = sample_gaussian_state(rng, 1, cfg.max_n, cfg.max_r)?;
            let g2 = sample_gaussian_state(rng, 1, cfg.max_n, cfg.max_r)?;
            if cfg.inequality == Inequality::QepiBs {
                check_qepi_bs(&g1, &g2, p)
            } else {
                check_qepi_amp(&g1, &g2, p)
            }
        }
        Inequality::CqepiBs | Inequality::CqepiAmp => {
            let g1 = sample_conditional_state(rng, cfg.max_n, cfg.max_r)?;
            let g2 = sample_conditional_state(rng, cfg.max_n, cfg.max_r)?;
            if cfg.inequality == Inequality::CqepiBs {
                check_cqepi_bs(&g1, &g2, p)
            } else {
                check_cqepi_amp(&g1, &g2, p)
            }
        }
        Inequality::MoeChainBs | Inequality::WcChainBs => {
            let n_e = cfg.max_n * rng.random::<f64>();
            let gamma_a = sample_gaussian_state(rng, 1, cfg.max_n, cfg.max_r)?;
            let spec = ChannelSpec::beam_splitter(p, make_thermal(n_e)?)?;
            check_chain_product(cfg.inequality, std::slice::from_ref(&gamma_a), &spec)
        }
    }
}

/// Samples `cfg.trials` trials (in parallel on the current rayon pool) and
/// aggregates their slacks in trial order.
pub fn monte_carlo_verify(cfg: &VerifyConfig) -> Result<EpiReport> {
    cfg.validate()?;
    let slacks: Vec<Result<f64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, i).map(|t| t.slack))
        .collect();

    let mut violations = 0;
    let mut min_slack = f64::INFINITY;
    let mut sum = 0.0;
    for (i, s) in slacks.into_iter().enumerate() {
        let s = s.map_err(|e| Error::Trial {
            index: i as u64,
            seed: cfg.seed,
            source: Box::new(e),
        })?;
        if s < -cfg.tolerance {
            violations += 1;
        }
        min_slack = min_slack.min(s);
        sum += s;
    }
    Ok(EpiReport {
        inequality: cfg.inequality,
        trials: cfg.trials,
        violations,
        min_slack,
        mean_slack: sum / cfg.trials as f64,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        max_n: cfg.max_n,
        max_r: cfg.max_r,
        parameter_range: cfg.parameter_range,
    })
}
