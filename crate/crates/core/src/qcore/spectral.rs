//! Hermitian eigendecomposition and everything derived from it: unitary
//! evolution, spectral projectors and entropy.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::operator::{DenseOperator, Role};
use super::C64;
use crate::error::{Error, Result};

/// Eigenvalues below this contribute nothing to the von Neumann entropy.
pub const ENTROPY_FLOOR: f64 = 1e-12;

/// Relative degeneracy tolerance used when none is configured: the ground
/// manifold collects levels within `1e-3 * (E_max - E_0)` of the ground energy.
pub const DEFAULT_DEGENERACY_FRACTION: f64 = 1e-3;

/// Spectrum of a Hermitian operator with eigenvalues in ascending order and
/// the matching eigenvectors as columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<C64>,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_energy(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn spectral_range(&self) -> f64 {
        self.max_energy() - self.ground_energy()
    }

    /// Degeneracy tolerance of `1e-3` times the spectral range.
    pub fn default_degeneracy_tol(&self) -> f64 {
        DEFAULT_DEGENERACY_FRACTION * self.spectral_range()
    }

    /// `Q f(Λ) Q^†` for a scalar function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
        let mut scaled = self.eigenvectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= f(self.eigenvalues[k]);
        }
        scaled * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.apply_fn(|l| C64::new(l, 0.0))
    }

    /// `exp(-i H t)`, unitary by construction.
    pub fn evolve(&self, t: f64) -> DenseOperator {
        let u = self.apply_fn(|l| C64::from_polar(1.0, -l * t));
        DenseOperator::with_role_unchecked(u, Role::Unitary)
    }

    /// Number of levels within `tol` of the ground energy.
    pub fn ground_manifold_size(&self, tol: f64) -> usize {
        let e0 = self.ground_energy();
        self.eigenvalues.iter().take_while(|&&e| e - e0 <= tol).count()
    }

    /// Orthogonal projector onto the eigenvectors with `E_j - E_0 <= tol`.
    pub fn ground_manifold_projector(&self, tol: f64) -> DenseOperator {
        let rank = self.ground_manifold_size(tol);
        let cols = self.eigenvectors.columns(0, rank);
        let p = cols * cols.adjoint();
        DenseOperator::with_role_unchecked(p, Role::Hermitian)
    }

    /// First excitation energy strictly above the ground manifold.
    pub fn gap_above(&self, tol: f64) -> Result<f64> {
        let rank = self.ground_manifold_size(tol);
        if rank >= self.dim() {
            return Err(Error::DegenerateSpectrum { tol });
        }
        Ok(self.eigenvalues[rank] - self.ground_energy())
    }

    /// Normalized ground-state vector (lowest eigenvector).
    pub fn ground_state(&self) -> DVector<C64> {
        self.eigenvectors.column(0).into_owned()
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
pub fn hermitian_eig(h: &DenseOperator) -> Result<EigenSystem> {
    if h.role() != Role::Hermitian {
        return Err(Error::NotHermitian {
            deviation: super::operator::hermitian_deviation(h.matrix()),
        });
    }
    Ok(eig_unchecked(h.matrix().clone()))
}

pub(crate) fn eig_unchecked(mat: DMatrix<C64>) -> EigenSystem {
    let n = mat.nrows();
    let eig = SymmetricEigen::new(mat);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    EigenSystem {
        eigenvalues,
        eigenvectors,
    }
}

/// `exp(-i H t)` through the eigendecomposition of `H`.
pub fn evolve(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    Ok(hermitian_eig(h)?.evolve(t))
}

/// `sum_{j: E_j - E_0 <= tol} |E_j><E_j|`.
pub fn ground_manifold_projector(h: &DenseOperator, degeneracy_tol: f64) -> Result<DenseOperator> {
    Ok(hermitian_eig(h)?.ground_manifold_projector(degeneracy_tol))
}

/// Shannon entropy in bits of a probability spectrum, ignoring entries below
/// [`ENTROPY_FLOOR`].
pub fn spectrum_entropy_bits(spectrum: impl IntoIterator<Item = f64>) -> f64 {
    let s: f64 = spectrum
        .into_iter()
        .filter(|&p| p > ENTROPY_FLOOR)
        .map(|p| -p * p.log2())
        .sum();
    s.max(0.0)
}
