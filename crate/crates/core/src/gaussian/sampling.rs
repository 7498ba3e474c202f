use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use super::state::CovarianceMatrix;
use super::symplectic::SymplecticMatrix;
use crate::error::{Error, Result};

/// Random `n_modes` Gaussian state, deterministic in `seed`.
///
/// `Γ = S D Sᵀ` with `ν_j = 2N_j + 1`, `N_j ~ U[0, max_n]`, and `S` drawn by
/// [`sample_symplectic`]. Parameter ranges are uniform; this is not a Haar
/// measure on the symplectic group.
pub fn random_gaussian_state(
    n_modes: usize,
    max_n: f64,
    max_r: f64,
    seed: u64,
) -> Result<CovarianceMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_gaussian_state(&mut rng, n_modes, max_n, max_r)
}

/// [`random_gaussian_state`] drawing from a caller-owned generator.
pub fn sample_gaussian_state<R: Rng + ?Sized>(
    rng: &mut R,
    n_modes: usize,
    max_n: f64,
    max_r: f64,
) -> Result<CovarianceMatrix> {
    check_ranges(n_modes, max_n, max_r)?;
    let nus = DVector::from_iterator(
        2 * n_modes,
        (0..n_modes).flat_map(|_| {
            let nu = 2.0 * max_n * rng.random::<f64>() + 1.0;
            [nu, nu]
        }),
    );
    let s = sample_symplectic(rng, n_modes, max_r)?;
    let m = s.matrix();
    Ok(CovarianceMatrix::from_raw(
        m * DMatrix::from_diagonal(&nus) * m.transpose(),
    ))
}

/// Random symplectic `L₂ · M · L₁` where each `L` is a product of per-mode
/// `R(θ) Sq(r) R(φ)` (angles uniform in `[0, 2π)`, `r ~ U[0, max_r]`) and `M`
/// chains random beam-splitter mixers over neighbouring modes.
pub fn sample_symplectic<R: Rng + ?Sized>(
    rng: &mut R,
    n_modes: usize,
    max_r: f64,
) -> Result<SymplecticMatrix> {
    check_ranges(n_modes, 0.0, max_r)?;
    let local = |rng: &mut R| -> SymplecticMatrix {
        let mut acc: Option<SymplecticMatrix> = None;
        for _ in 0..n_modes {
            let block = SymplecticMatrix::rotation(TAU * rng.random::<f64>())
                .compose(&SymplecticMatrix::squeezer(max_r * rng.random::<f64>()))
                .and_then(|b| b.compose(&SymplecticMatrix::rotation(TAU * rng.random::<f64>())))
                .expect("single-mode blocks");
            acc = Some(match acc {
                None => block,
                Some(a) => a.direct_sum(&block),
            });
        }
        acc.expect("n_modes >= 1")
    };

    let first = local(rng);
    let mut mixing = SymplecticMatrix::identity(n_modes);
    for j in 0..n_modes.saturating_sub(1) {
        let bs = SymplecticMatrix::mixer(rng.random::<f64>()).embed(n_modes, &[j, j + 1])?;
        mixing = bs.compose(&mixing)?;
    }
    let last = local(rng);
    last.compose(&mixing)?.compose(&first)
}

fn check_ranges(n_modes: usize, max_n: f64, max_r: f64) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::domain("need at least one mode"));
    }
    for (v, what) in [(max_n, "max_n"), (max_r, "max_r")] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::domain(format!("{what} must be finite and >= 0, got {v}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::spectrum::symplectic_eigenvalues;
    use crate::gaussian::symplectic::symplectic_residual;

    #[test]
    fn degenerate_ranges_give_vacuum() {
        for seed in [0, 1, 99] {
            let g = random_gaussian_state(3, 0.0, 0.0, seed).unwrap();
            assert!((g.matrix() - DMatrix::identity(6, 6)).amax() < 1e-12);
        }
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let a = random_gaussian_state(2, 3.0, 1.0, 7).unwrap();
        let b = random_gaussian_state(2, 3.0, 1.0, 7).unwrap();
        let c = random_gaussian_state(2, 3.0, 1.0, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_symplectics_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..4 {
            let s = sample_symplectic(&mut rng, n, 1.5).unwrap();
            let scale = s.matrix().amax().powi(2).max(1.0);
            assert!(symplectic_residual(s.matrix()) < 1e-12 * scale);
        }
    }

    #[test]
    fn many_two_mode_samples_are_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let g = sample_gaussian_state(&mut rng, 2, 5.0, 1.5).unwrap();
            let nus = symplectic_eigenvalues(&g).unwrap();
            assert!(nus.iter().all(|&nu| nu >= 1.0));
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(random_gaussian_state(0, 1.0, 1.0, 0).is_err());
        assert!(random_gaussian_state(1, -1.0, 1.0, 0).is_err());
        assert!(random_gaussian_state(1, 1.0, f64::INFINITY, 0).is_err());
    }
}
