use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::state::{check_partition, check_photons, CovarianceMatrix, ModePartition};
use super::symplectic::{omega, SymplecticMatrix};
use crate::error::{Error, Result};

/// Symplectic eigenvalues in `[1 − PURITY_TOL, 1)` are clamped to 1.
pub const PURITY_TOL: f64 = 1e-9;

/// Relative tolerance for the two members of an eigenvalue pair to agree.
const PAIRING_TOL: f64 = 1e-8;

/// Eigenvalues of `MᵀM` closer than this (relative) are treated as one cluster
/// when building the Williamson basis.
const CLUSTER_TOL: f64 = 1e-8;

/// Intermediate quantities shared by the spectrum and the Williamson basis.
struct Spectral {
    sqrt_gamma: DMatrix<f64>,
    /// `Γ^{1/2} Ω Γ^{1/2}`, antisymmetric with eigenvalues `±iν_j`.
    kernel: DMatrix<f64>,
    /// Eigenvalues of `kernelᵀ kernel` (each `ν_j²` twice), descending.
    squares: Vec<f64>,
    vectors: Vec<DVector<f64>>,
    nus: Vec<f64>,
}

fn spectral(gamma: &CovarianceMatrix) -> Result<Spectral> {
    let dim = gamma.dim();
    let eig = SymmetricEigen::new(gamma.matrix().clone());
    let min = eig.eigenvalues.min();
    if !(min > 0.0) {
        return Err(Error::Unphysical(format!(
            "covariance matrix is not positive definite (smallest eigenvalue {min:e})"
        )));
    }
    let roots = eig.eigenvalues.map(f64::sqrt);
    let sqrt_gamma =
        &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.transpose();
    let sqrt_gamma = (&sqrt_gamma + sqrt_gamma.transpose()) * 0.5;

    let kernel = &sqrt_gamma * omega(gamma.n_modes()) * &sqrt_gamma;
    let kernel = (&kernel - kernel.transpose()) * 0.5;
    let gram = kernel.transpose() * &kernel;
    let gram = (&gram + gram.transpose()) * 0.5;
    let g_eig = SymmetricEigen::new(gram);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| g_eig.eigenvalues[b].total_cmp(&g_eig.eigenvalues[a]));
    let squares: Vec<f64> = order.iter().map(|&k| g_eig.eigenvalues[k]).collect();
    let vectors: Vec<DVector<f64>> = order
        .iter()
        .map(|&k| g_eig.eigenvectors.column(k).into_owned())
        .collect();

    // Singular values of the kernel carry absolute error ~ε‖K‖, against
    // ~ε‖K‖²/ν for square roots of the Gram eigenvalues.
    let mut singular: Vec<f64> = kernel.clone().svd(false, false).singular_values.iter().copied().collect();
    singular.sort_by(|a, b| b.total_cmp(a));
    let slack = 64.0 * f64::EPSILON * singular.first().copied().unwrap_or(0.0);
    let mut nus = Vec::with_capacity(gamma.n_modes());
    for pair in singular.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if (a - b).abs() > PAIRING_TOL * a.max(1.0) + slack {
            return Err(Error::Numerical(format!(
                "symplectic spectrum is not paired: {a} vs {b}"
            )));
        }
        let nu = 0.5 * (a + b);
        if nu < 1.0 - PURITY_TOL {
            return Err(Error::Unphysical(format!(
                "symplectic eigenvalue {nu} is below 1"
            )));
        }
        nus.push(if nu <= 1.0 + 8.0 * f64::EPSILON { 1.0 } else { nu });
    }
    Ok(Spectral {
        sqrt_gamma,
        kernel,
        squares,
        vectors,
        nus,
    })
}

/// Symplectic eigenvalues `ν_j ≥ 1`, sorted in descending order.
///
/// These are the moduli of the eigenvalues of `ΩΓ`, read off as the singular
/// values of the antisymmetric matrix `Γ^{1/2}ΩΓ^{1/2}`, each of which
/// appears twice.
pub fn symplectic_eigenvalues(gamma: &CovarianceMatrix) -> Result<Vec<f64>> {
    Ok(spectral(gamma)?.nus)
}

/// Thermal entropy `g(x) = (x + 1) ln(x + 1) − x ln x` in nats, `g(0) = 0`.
pub fn g_function(x: f64) -> Result<f64> {
    check_photons(x, "argument of g")?;
    Ok(g_unchecked(x))
}

pub(crate) fn g_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x < 1e-4 {
        (1.0 + x) * x.ln_1p() - x * x.ln()
    } else {
        x.ln_1p() + x * x.recip().ln_1p()
    }
}

/// Von Neumann entropy `Σ_j g((ν_j − 1)/2)` in nats.
pub fn entropy(gamma: &CovarianceMatrix) -> Result<f64> {
    Ok(symplectic_eigenvalues(gamma)?
        .into_iter()
        .map(|nu| g_unchecked(0.5 * (nu - 1.0)))
        .sum())
}

/// Mean photon number `(tr Γ − 2)/4` of a single-mode state.
pub fn mean_photon(gamma: &CovarianceMatrix) -> Result<f64> {
    if gamma.n_modes() != 1 {
        return Err(Error::domain(format!(
            "mean photon number is defined here for one mode, got {}",
            gamma.n_modes()
        )));
    }
    let m = gamma.matrix();
    Ok((0.25 * (m[(0, 0)] + m[(1, 1)] - 2.0)).max(0.0))
}

/// `Γ = S D Sᵀ` with `S` symplectic and `D = diag(ν_1, ν_1, ..., ν_n, ν_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Williamson {
    pub symplectic: SymplecticMatrix,
    /// Symplectic eigenvalues, descending; mode `j` of `D` carries `nus[j]`.
    pub nus: Vec<f64>,
}

impl Williamson {
    pub fn diagonal(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_iterator(
            2 * self.nus.len(),
            self.nus.iter().flat_map(|&nu| [nu, nu]),
        ))
    }

    /// `S D Sᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let s = self.symplectic.matrix();
        s * self.diagonal() * s.transpose()
    }
}

/// Williamson normal form of a physical covariance matrix.
///
/// `S = Γ^{1/2} O D^{-1/2}` where `O` is an orthogonal basis bringing
/// `Γ^{1/2}ΩΓ^{1/2}` to `⊕ ν_j [[0, 1], [−1, 0]]`. The remaining per-mode
/// rotation freedom is fixed by making each diagonal 2×2 block of `S`
/// symmetric with nonnegative trace.
pub fn williamson(gamma: &CovarianceMatrix) -> Result<Williamson> {
    let sp = spectral(gamma)?;
    let n = gamma.n_modes();
    let dim = 2 * n;
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(dim);

    for j in 0..n {
        let target = sp.squares[2 * j];
        let mut best: Option<(f64, DVector<f64>)> = None;
        for (k, v) in sp.vectors.iter().enumerate() {
            if (sp.squares[k] - target).abs() > CLUSTER_TOL * target.max(1.0) {
                continue;
            }
            let r = orthogonalize(v.clone(), &basis);
            let norm = r.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, r));
            }
        }
        let (norm, u) = best.ok_or_else(|| Error::Numerical("empty eigenvalue cluster".into()))?;
        if norm < 0.5 {
            return Err(Error::Numerical(format!(
                "could not complete Williamson basis at pair {j}"
            )));
        }
        let u = u / norm;
        let w = orthogonalize(-(&sp.kernel * &u), &basis);
        let w = orthogonalize(w, std::slice::from_ref(&u));
        let w_norm = w.norm();
        if !(w_norm > 0.0) {
            return Err(Error::Numerical("degenerate Williamson pair".into()));
        }
        basis.push(u);
        basis.push(w / w_norm);
    }

    let o = DMatrix::from_columns(&basis);
    let inv_sqrt_d = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        sp.nus.iter().flat_map(|&nu| {
            let s = nu.sqrt().recip();
            [s, s]
        }),
    ));
    let mut s = &sp.sqrt_gamma * o * inv_sqrt_d;

    for j in 0..n {
        let (a00, a01, a10, a11) = (
            s[(2 * j, 2 * j)],
            s[(2 * j, 2 * j + 1)],
            s[(2 * j + 1, 2 * j)],
            s[(2 * j + 1, 2 * j + 1)],
        );
        let theta = (a01 - a10).atan2(a00 + a11);
        let (sn, c) = theta.sin_cos();
        for row in 0..dim {
            let x = s[(row, 2 * j)];
            let y = s[(row, 2 * j + 1)];
            s[(row, 2 * j)] = x * c + y * sn;
            s[(row, 2 * j + 1)] = -x * sn + y * c;
        }
    }

    Ok(Williamson {
        symplectic: SymplecticMatrix::from_raw(s),
        nus: sp.nus,
    })
}

fn orthogonalize(mut v: DVector<f64>, against: &[DVector<f64>]) -> DVector<f64> {
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for b in against {
            let p = b.dot(&v);
            v.axpy(-p, b, 1.0);
        }
    }
    v
}

/// Pure `2n`-mode state whose first `n` modes reduce to `gamma`.
///
/// Modes `n..2n` are the reference; mode `j` is purified by mode `n + j` in
/// Williamson coordinates, and `S ⊕ I` maps back.
pub fn purify(gamma: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    let w = williamson(gamma)?;
    let n = gamma.n_modes();
    let mut m = DMatrix::zeros(4 * n, 4 * n);
    for (j, &nu) in w.nus.iter().enumerate() {
        let c = (nu * nu - 1.0).max(0.0).sqrt();
        let (a, b) = (2 * j, 2 * (n + j));
        for q in 0..2 {
            let z = if q == 0 { 1.0 } else { -1.0 };
            m[(a + q, a + q)] = nu;
            m[(b + q, b + q)] = nu;
            m[(a + q, b + q)] = c * z;
            m[(b + q, a + q)] = c * z;
        }
    }
    let lift = w.symplectic.direct_sum(&SymplecticMatrix::identity(n));
    Ok(CovarianceMatrix::from_raw(m).transformed(&lift))
}

/// `S(X | Z) = S(XZ) − S(Z)` with `X = partition.kept()`, `Z = partition.traced()`.
pub fn conditional_entropy(gamma: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    check_partition(gamma, partition)?;
    let joint = entropy(gamma)?;
    let cond = if partition.traced().is_empty() {
        0.0
    } else {
        entropy(&gamma.reduced(partition.traced())?)?
    };
    Ok(joint - cond)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::state::{make_squeezed_thermal, make_thermal};
    use crate::gaussian::symplectic::symplectic_residual;
    use std::f64::consts::LN_2;

    /// `|eig(ΩΓ)|` from the general (non-symmetric) eigenvalue routine:
    /// an independent route to the same spectrum.
    fn nus_via_omega_gamma(gamma: &CovarianceMatrix) -> Vec<f64> {
        let m = omega(gamma.n_modes()) * gamma.matrix();
        let mut moduli: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        moduli.iter().step_by(2).copied().collect()
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(symplectic_eigenvalues(&CovarianceMatrix::vacuum(1)).unwrap(), vec![1.0]);
        let t = symplectic_eigenvalues(&make_thermal(1.0).unwrap()).unwrap();
        assert!((t[0] - 3.0).abs() < 1e-14);
        let st = make_squeezed_thermal(1.0, 0.9).unwrap();
        let nus = symplectic_eigenvalues(&st).unwrap();
        let oracle = nus_via_omega_gamma(&st);
        assert!((nus[0] - 3.0).abs() < 1e-12);
        assert!((oracle[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_omega_gamma_route_on_mixed_correlated_state() {
        let tms = CovarianceMatrix::two_mode_squeezed(0.6).unwrap();
        let gamma = make_thermal(0.7)
            .unwrap()
            .direct_sum(&make_thermal(2.0).unwrap())
            .transformed(&SymplecticMatrix::two_mode_squeezer(0.6));
        let nus = symplectic_eigenvalues(&gamma).unwrap();
        let oracle = nus_via_omega_gamma(&gamma);
        assert!((nus[0] - 5.0).abs() < 1e-10 && (nus[1] - 2.4).abs() < 1e-10);
        for (a, b) in nus.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10);
        }
        let pure = symplectic_eigenvalues(&tms).unwrap();
        assert!(pure.iter().all(|nu| (nu - 1.0).abs() < 1e-12));
    }

    #[test]
    fn near_pure_states_are_clamped_and_sub_vacuum_rejected() {
        let almost = DMatrix::identity(2, 2) * (1.0 - 5e-10);
        let cm = CovarianceMatrix::new(almost).unwrap();
        assert_eq!(symplectic_eigenvalues(&cm).unwrap(), vec![1.0]);
        let below = DMatrix::identity(2, 2) * (1.0 - 1e-7);
        assert!(matches!(CovarianceMatrix::new(below), Err(Error::Unphysical(_))));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_function(0.0).unwrap(), 0.0);
        assert!((g_function(1.0).unwrap() - 2.0 * LN_2).abs() < 1e-15);
        let expected = 1.5 * 3f64.ln() - 2f64.ln();
        assert!((g_function(0.5).unwrap() - expected).abs() < 1e-15);
        assert!((g_function(0.5).unwrap() - 0.954_771_252_442_219_2).abs() < 1e-15);
        assert!(matches!(g_function(-1e-3), Err(Error::Domain(_))));
    }

    #[test]
    fn g_branches_agree_at_switch_point() {
        let x = 1e-4;
        let direct = (1.0 + x) * f64::ln(1.0 + x) - x * x.ln();
        let hi = x.ln_1p() + x * x.recip().ln_1p();
        assert!((g_unchecked(x) - direct).abs() < 1e-15);
        assert!((hi - direct).abs() < 1e-15);
        assert!(g_unchecked(1e-310) > 0.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&CovarianceMatrix::vacuum(1)).unwrap(), 0.0);
        assert!((entropy(&make_thermal(1.0).unwrap()).unwrap() - 2.0 * LN_2).abs() < 1e-14);
        let tms = CovarianceMatrix::two_mode_squeezed(0.8).unwrap();
        assert!(entropy(&tms).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mean_photon_examples() {
        assert_eq!(mean_photon(&CovarianceMatrix::vacuum(1)).unwrap(), 0.0);
        assert!((mean_photon(&make_thermal(2.5).unwrap()).unwrap() - 2.5).abs() < 1e-15);
        let sv = make_squeezed_thermal(0.0, 1.0).unwrap();
        let expected = (std::f64::consts::E.powi(2) + (-2f64).exp() - 2.0) / 4.0;
        assert!((mean_photon(&sv).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 1.381_097_845_541_815_7).abs() < 1e-15);
        assert!(mean_photon(&CovarianceMatrix::vacuum(2)).is_err());
    }

    #[test]
    fn williamson_examples() {
        let w = williamson(&CovarianceMatrix::vacuum(1)).unwrap();
        assert!((w.symplectic.matrix() - DMatrix::identity(2, 2)).amax() < 1e-14);
        assert_eq!(w.nus, vec![1.0]);

        let r = 0.65;
        let w = williamson(&make_squeezed_thermal(1.0, r).unwrap()).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[(-r).exp(), 0.0, 0.0, r.exp()]);
        assert!((w.symplectic.matrix() - expected).amax() < 1e-12);
        assert!((w.nus[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn williamson_handles_degenerate_spectra() {
        let gamma = make_thermal(1.0)
            .unwrap()
            .direct_sum(&make_thermal(1.0).unwrap())
            .transformed(&SymplecticMatrix::mixer(0.3))
            .direct_sum(&make_thermal(1.0).unwrap());
        let w = williamson(&gamma).unwrap();
        assert!(symplectic_residual(w.symplectic.matrix()) < 1e-12);
        assert!((w.reconstruct() - gamma.matrix()).amax() < 1e-12);
        assert!(w.nus.iter().all(|nu| (nu - 3.0).abs() < 1e-12));
    }

    #[test]
    fn purify_examples() {
        let p = purify(&CovarianceMatrix::vacuum(1)).unwrap();
        assert!((p.matrix() - DMatrix::identity(4, 4)).amax() < 1e-14);

        let p = purify(&make_thermal(1.0).unwrap()).unwrap();
        let c = 8f64.sqrt();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                3.0, 0.0, c, 0.0, //
                0.0, 3.0, 0.0, -c, //
                c, 0.0, 3.0, 0.0, //
                0.0, -c, 0.0, 3.0,
            ],
        );
        assert!((p.matrix() - expected).amax() < 1e-12);
        assert!(symplectic_eigenvalues(&p).unwrap().iter().all(|&nu| (nu - 1.0).abs() < 1e-9));
        assert!((p.reduced(&[0]).unwrap().matrix() - make_thermal(1.0).unwrap().matrix()).amax() < 1e-10);
    }

    #[test]
    fn conditional_entropy_examples() {
        let x = make_thermal(1.0).unwrap();
        let z = make_squeezed_thermal(0.5, 0.2).unwrap();
        let prod = x.direct_sum(&z);
        let p = ModePartition::new(2, vec![0], vec![1]).unwrap();
        assert!((conditional_entropy(&prod, &p).unwrap() - 2.0 * LN_2).abs() < 1e-12);

        let r: f64 = 0.8;
        let tms = CovarianceMatrix::two_mode_squeezed(r).unwrap();
        let expected = -g_unchecked(r.sinh().powi(2));
        assert!((conditional_entropy(&tms, &p).unwrap() - expected).abs() < 1e-10);

        assert_eq!(conditional_entropy(&CovarianceMatrix::vacuum(2), &p).unwrap(), 0.0);
        let bad = ModePartition::new(3, vec![0], vec![1, 2]).unwrap();
        assert!(conditional_entropy(&tms, &bad).is_err());
    }

    #[test]
    fn two_mode_squeezed_reduced_photon_number() {
        let r: f64 = 0.8;
        let tms = CovarianceMatrix::two_mode_squeezed(r).unwrap();
        let m = tms.reduced(&[1]).unwrap();
        assert!((mean_photon(&m).unwrap() - r.sinh().powi(2)).abs() < 1e-14);
    }
}
