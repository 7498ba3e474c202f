use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Entrywise tolerance on `S Ω Sᵀ − Ω`, relative to `max(1, max|S|²)`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// The block-diagonal symplectic form `⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        Self {
            n_modes,
            data: omega(n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }
}

pub(crate) fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        m[(2 * j, 2 * j + 1)] = 1.0;
        m[(2 * j + 1, 2 * j)] = -1.0;
    }
    m
}

/// Largest entry of `|S Ω Sᵀ − Ω|`.
pub fn symplectic_residual(s: &DMatrix<f64>) -> f64 {
    let om = omega(s.nrows() / 2);
    (s * &om * s.transpose() - om).amax()
}

/// A real `2n × 2n` matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl SymplecticMatrix {
    /// Validates `S Ω Sᵀ = Ω`.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() != data.ncols() || !data.nrows().is_multiple_of(2) || data.nrows() == 0 {
            return Err(Error::domain(format!(
                "symplectic matrix must be 2n x 2n, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("symplectic matrix has non-finite entries"));
        }
        let residual = symplectic_residual(&data);
        let scale = data.amax().powi(2).max(1.0);
        if residual > SYMPLECTIC_TOL * scale {
            return Err(Error::domain(format!(
                "matrix is not symplectic (residual {residual:e})"
            )));
        }
        Ok(Self::from_raw(data))
    }

    pub(crate) fn from_raw(data: DMatrix<f64>) -> Self {
        Self {
            n_modes: data.nrows() / 2,
            data,
        }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self::from_raw(DMatrix::identity(2 * n_modes, 2 * n_modes))
    }

    /// Phase rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_raw(DMatrix::from_row_slice(2, 2, &[c, s, -s, c]))
    }

    /// Single-mode squeezer `diag(e^{-r}, e^{r})`.
    pub fn squeezer(r: f64) -> Self {
        Self::from_raw(DMatrix::from_row_slice(
            2,
            2,
            &[(-r).exp(), 0.0, 0.0, r.exp()],
        ))
    }

    /// Two-mode mixer `[[√τ I, √(1−τ) I], [−√(1−τ) I, √τ I]]`; the caller
    /// guarantees `τ ∈ [0, 1]`.
    pub(crate) fn mixer(tau: f64) -> Self {
        let t = tau.sqrt();
        let r = (1.0 - tau).sqrt();
        let mut m = DMatrix::zeros(4, 4);
        for q in 0..2 {
            m[(q, q)] = t;
            m[(q, q + 2)] = r;
            m[(q + 2, q)] = -r;
            m[(q + 2, q + 2)] = t;
        }
        Self::from_raw(m)
    }

    /// Two-mode squeezer `[[cosh r I, sinh r Z], [sinh r Z, cosh r I]]`
    /// with `Z = diag(1, −1)`.
    pub fn two_mode_squeezer(r: f64) -> Self {
        Self::gain_block(r.cosh(), r.sinh())
    }

    /// `[[a I, b Z], [b Z, a I]]`, symplectic whenever `a² − b² = 1`.
    pub(crate) fn gain_block(a: f64, b: f64) -> Self {
        let mut m = DMatrix::zeros(4, 4);
        for q in 0..2 {
            let z = if q == 0 { 1.0 } else { -1.0 };
            m[(q, q)] = a;
            m[(q + 2, q + 2)] = a;
            m[(q, q + 2)] = b * z;
            m[(q + 2, q)] = b * z;
        }
        Self::from_raw(m)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_raw(self.data.transpose())
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<Self> {
        if self.n_modes != other.n_modes {
            return Err(Error::domain(format!(
                "cannot compose {}-mode and {}-mode symplectics",
                self.n_modes, other.n_modes
            )));
        }
        Ok(Self::from_raw(&self.data * &other.data))
    }

    pub fn direct_sum(&self, other: &SymplecticMatrix) -> Self {
        Self::from_raw(block_diag(&self.data, &other.data))
    }

    /// Lifts `self` (acting on `modes.len()` modes) to an `n_modes` system,
    /// acting on `modes[k]` in place of its local mode `k` and as the identity
    /// elsewhere.
    pub fn embed(&self, n_modes: usize, modes: &[usize]) -> Result<Self> {
        if modes.len() != self.n_modes {
            return Err(Error::domain(format!(
                "embedding a {}-mode symplectic needs {} target modes, got {}",
                self.n_modes,
                self.n_modes,
                modes.len()
            )));
        }
        for (k, &m) in modes.iter().enumerate() {
            if m >= n_modes || modes[..k].contains(&m) {
                return Err(Error::domain(format!(
                    "invalid target modes {modes:?} for {n_modes} modes"
                )));
            }
        }
        let mut out = DMatrix::identity(2 * n_modes, 2 * n_modes);
        for (a, &ma) in modes.iter().enumerate() {
            for (b, &mb) in modes.iter().enumerate() {
                for qa in 0..2 {
                    for qb in 0..2 {
                        out[(2 * ma + qa, 2 * mb + qb)] = self.data[(2 * a + qa, 2 * b + qb)];
                    }
                }
            }
        }
        Ok(Self::from_raw(out))
    }
}

pub(crate) fn block_diag(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows() + b.nrows();
    let mut out = DMatrix::zeros(n, n);
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((a.nrows(), a.ncols()), b.shape()).copy_from(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_antisymmetric_and_squares_to_minus_identity() {
        for n in 1..4 {
            let om = SymplecticForm::new(n);
            let m = om.matrix();
            assert_eq!(m.transpose(), -m);
            assert_eq!(m * m, -DMatrix::<f64>::identity(2 * n, 2 * n));
        }
    }

    #[test]
    fn elementary_gates_are_symplectic() {
        let gates = [
            SymplecticMatrix::rotation(0.7),
            SymplecticMatrix::squeezer(1.3),
            SymplecticMatrix::mixer(0.3),
            SymplecticMatrix::two_mode_squeezer(0.9),
        ];
        for g in gates {
            assert!(symplectic_residual(g.matrix()) < 1e-12);
        }
    }

    #[test]
    fn new_rejects_non_symplectic() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(matches!(SymplecticMatrix::new(m), Err(Error::Domain(_))));
        assert!(SymplecticMatrix::new(DMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn embed_places_blocks_on_target_modes() {
        let s = SymplecticMatrix::mixer(0.25);
        let e = s.embed(3, &[2, 0]).unwrap();
        assert!(symplectic_residual(e.matrix()) < 1e-12);
        // local mode 0 -> global mode 2; local mode 1 -> global mode 0
        assert_eq!(e.matrix()[(4, 4)], 0.5);
        assert_eq!(e.matrix()[(4, 0)], s.matrix()[(0, 2)]);
        assert_eq!(e.matrix()[(2, 2)], 1.0);
        assert!(s.embed(3, &[1, 1]).is_err());
        assert!(s.embed(2, &[0, 2]).is_err());
    }
}
