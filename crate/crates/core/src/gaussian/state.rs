use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::spectrum::symplectic_eigenvalues;
use super::symplectic::{block_diag, SymplecticMatrix};
use crate::error::{Error, Result};

/// Absolute tolerance on `|Γ_ij − Γ_ji|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Second moments of a zero-mean Gaussian state on `n` modes.
///
/// The matrix is `2n × 2n` in `(x1, p1, x2, p2, ...)` ordering; the vacuum is
/// the identity. Values produced by [`CovarianceMatrix::new`] and by the
/// operations of this crate are symmetric and satisfy the uncertainty
/// principle (every symplectic eigenvalue is at least one).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: DMatrix<f64>,
}

/// Row-major JSON form used in fixtures: `{"n_modes": n, "data": [...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n_modes: usize,
    data: Vec<f64>,
}

impl TryFrom<MatrixRepr> for CovarianceMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let dim = 2 * repr.n_modes;
        if repr.data.len() != dim * dim {
            return Err(Error::domain(format!(
                "{} modes need {} entries, got {}",
                repr.n_modes,
                dim * dim,
                repr.data.len()
            )));
        }
        Self::from_row_major(&repr.data)
    }
}

impl From<CovarianceMatrix> for MatrixRepr {
    fn from(cm: CovarianceMatrix) -> Self {
        MatrixRepr {
            n_modes: cm.n_modes,
            data: cm.to_row_major(),
        }
    }
}

impl CovarianceMatrix {
    /// Validates shape, symmetry and physicality.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let (r, c) = data.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::domain(format!(
                "covariance matrix must be 2n x 2n, got {r}x{c}"
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("covariance matrix has non-finite entries"));
        }
        let asym = (&data - data.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(Error::domain(format!(
                "covariance matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        let cm = Self::from_raw(data);
        symplectic_eigenvalues(&cm)?;
        Ok(cm)
    }

    /// Parses a row-major list of `4n²` values.
    pub fn from_row_major(values: &[f64]) -> Result<Self> {
        let dim = (values.len() as f64).sqrt().round() as usize;
        if dim * dim != values.len() {
            return Err(Error::domain(format!(
                "{} values do not form a square matrix",
                values.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, values))
    }

    /// Wraps a matrix from an operation known to preserve physicality,
    /// symmetrizing away roundoff.
    pub(crate) fn from_raw(data: DMatrix<f64>) -> Self {
        let sym = (&data + data.transpose()) * 0.5;
        Self {
            n_modes: sym.nrows() / 2,
            data: sym,
        }
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::from_raw(DMatrix::identity(2 * n_modes, 2 * n_modes))
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn two_mode_squeezed(r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("squeezing must be >= 0, got {r}")));
        }
        Ok(Self::vacuum(2).transformed(&SymplecticMatrix::two_mode_squeezer(r)))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn to_row_major(&self) -> Vec<f64> {
        self.data.transpose().iter().copied().collect()
    }

    pub fn determinant(&self) -> f64 {
        if self.n_modes == 1 {
            let m = &self.data;
            m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
        } else {
            self.data.determinant()
        }
    }

    /// `S Γ Sᵀ`. Panics if the mode counts differ; use
    /// [`CovarianceMatrix::try_transformed`] for a checked variant.
    pub fn transformed(&self, s: &SymplecticMatrix) -> Self {
        self.try_transformed(s).expect("mode count mismatch")
    }

    pub fn try_transformed(&self, s: &SymplecticMatrix) -> Result<Self> {
        if s.n_modes() != self.n_modes {
            return Err(Error::domain(format!(
                "{}-mode symplectic applied to {}-mode state",
                s.n_modes(),
                self.n_modes
            )));
        }
        let m = s.matrix();
        Ok(Self::from_raw(m * &self.data * m.transpose()))
    }

    /// Tensor product state `self ⊗ other`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> Self {
        Self::from_raw(block_diag(&self.data, &other.data))
    }

    /// Principal submatrix on `modes`, in the given order.
    pub fn reduced(&self, modes: &[usize]) -> Result<Self> {
        for (k, &m) in modes.iter().enumerate() {
            if m >= self.n_modes || modes[..k].contains(&m) {
                return Err(Error::domain(format!(
                    "invalid mode selection {modes:?} for {} modes",
                    self.n_modes
                )));
            }
        }
        let dim = 2 * modes.len();
        let sub = DMatrix::from_fn(dim, dim, |i, j| {
            self.data[(2 * modes[i / 2] + i % 2, 2 * modes[j / 2] + j % 2)]
        });
        Ok(Self {
            n_modes: modes.len(),
            data: sub,
        })
    }

    /// Whether the state is `c · I` for some scalar `c`, i.e. thermal (or vacuum).
    pub fn is_thermal(&self) -> bool {
        let c = self.data[(0, 0)];
        let id = DMatrix::<f64>::identity(self.dim(), self.dim()) * c;
        (&self.data - id).amax() <= 1e-12 * c.abs().max(1.0)
    }
}

/// Thermal state `(2N + 1) I₂` with mean photon number `N`.
pub fn make_thermal(n: f64) -> Result<CovarianceMatrix> {
    check_photons(n, "mean photon number")?;
    Ok(CovarianceMatrix::from_raw(
        DMatrix::identity(2, 2) * (2.0 * n + 1.0),
    ))
}

/// Squeezed thermal state `(2N_th + 1) diag(e^{−2r}, e^{2r})`.
pub fn make_squeezed_thermal(n_th: f64, r: f64) -> Result<CovarianceMatrix> {
    check_photons(n_th, "thermal photon number")?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("squeezing must be >= 0, got {r}")));
    }
    let nu = 2.0 * n_th + 1.0;
    Ok(CovarianceMatrix::from_raw(DMatrix::from_row_slice(
        2,
        2,
        &[nu * (-2.0 * r).exp(), 0.0, 0.0, nu * (2.0 * r).exp()],
    )))
}

pub(crate) fn check_photons(n: f64, what: &str) -> Result<()> {
    if n.is_finite() && n >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must be finite and >= 0, got {n}")))
    }
}

/// Split of a system's modes into kept and traced (or conditioning) parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModePartition {
    kept: Vec<usize>,
    traced: Vec<usize>,
}

impl ModePartition {
    /// `kept` and `traced` must be disjoint and together cover `0..n_modes`.
    pub fn new(n_modes: usize, kept: Vec<usize>, traced: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n_modes];
        for &m in kept.iter().chain(&traced) {
            if m >= n_modes || seen[m] {
                return Err(Error::domain(format!(
                    "partition {kept:?} | {traced:?} is not a disjoint cover of {n_modes} modes"
                )));
            }
            seen[m] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::domain(format!(
                "partition {kept:?} | {traced:?} does not cover all {n_modes} modes"
            )));
        }
        Ok(Self { kept, traced })
    }

    /// Keeps `kept` and traces everything else.
    pub fn keeping(n_modes: usize, kept: &[usize]) -> Result<Self> {
        let traced = (0..n_modes).filter(|m| !kept.contains(m)).collect();
        Self::new(n_modes, kept.to_vec(), traced)
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn traced(&self) -> &[usize] {
        &self.traced
    }

    pub fn n_modes(&self) -> usize {
        self.kept.len() + self.traced.len()
    }

    fn check(&self, gamma: &CovarianceMatrix) -> Result<()> {
        if self.n_modes() != gamma.n_modes() {
            return Err(Error::domain(format!(
                "partition over {} modes applied to {}-mode state",
                self.n_modes(),
                gamma.n_modes()
            )));
        }
        Ok(())
    }
}

/// Reduced state on the kept modes.
pub fn partial_trace(gamma: &CovarianceMatrix, partition: &ModePartition) -> Result<CovarianceMatrix> {
    partition.check(gamma)?;
    gamma.reduced(partition.kept())
}

pub(crate) fn check_partition(gamma: &CovarianceMatrix, partition: &ModePartition) -> Result<()> {
    partition.check(gamma)
}
