use nalgebra::{DMatrix, DVector};

use super::operator::{check_same_dim, check_square, hermitian_deviation, DenseOperator, HERMITIAN_TOL};
use super::spectral::{eig_unchecked, spectrum_entropy_bits};
use super::{max_abs, C64};
use crate::error::{Error, Result};

pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue a freshly constructed state may have.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated after a channel has been applied. Anything
/// lower is reported as an error, never clipped.
pub const CHANNEL_POSITIVITY_TOL: f64 = 1e-9;

/// A trace-one, Hermitian, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates all three state invariants, including positivity.
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        let state = Self::from_computed(mat)?;
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(state)
    }

    /// Checks trace and Hermiticity, then replaces the matrix by its exact
    /// Hermitian part. Positivity is left to the caller.
    pub(crate) fn from_computed(mat: DMatrix<C64>) -> Result<Self> {
        check_square(&mat)?;
        let deviation = hermitian_deviation(&mat);
        if deviation > HERMITIAN_TOL * max_abs(&mat).max(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let herm = (&mat + mat.adjoint()) * C64::new(0.5, 0.0);
        Ok(Self { mat: herm })
    }

    /// `|psi><psi|` for a vector normalized here.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm > 0.0) {
            return Err(crate::error::invalid("psi", "zero vector"));
        }
        let v = psi / C64::new(norm, 0.0);
        Self::from_computed(&v * v.adjoint())
    }

    /// Computational basis state `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(crate::error::invalid("index", format!("{index} >= dim {dim}")));
        }
        let mut mat = DMatrix::zeros(dim, dim);
        mat[(index, index)] = C64::new(1.0, 0.0);
        Ok(Self { mat })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut mat = DMatrix::zeros(dim, dim);
        mat.fill_diagonal(C64::new(1.0 / dim as f64, 0.0));
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        eig_unchecked(self.mat.clone()).eigenvalues().iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum()[0]
    }

    /// Returns an error if the smallest eigenvalue is below `-tol`.
    pub fn check_positive(&self, tol: f64) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -tol {
            Err(Error::NotPositive { min_eigenvalue: min })
        } else {
            Ok(())
        }
    }

    /// `<i|rho|i>` for a computational basis index.
    pub fn population(&self, index: usize) -> f64 {
        self.mat[(index, index)].re
    }
}

/// `U rho U^†`.
pub fn conjugate(rho: &DensityMatrix, u: &DenseOperator) -> Result<DensityMatrix> {
    check_same_dim(rho.dim(), u.dim())?;
    let m = u.matrix() * rho.matrix() * u.matrix().adjoint();
    DensityMatrix::from_computed(m)
}

/// `rho_S ⊗ |0><0|` with the fridge as the last qubit.
pub fn append_fridge_ground(rho_s: &DensityMatrix) -> DensityMatrix {
    let d = rho_s.dim();
    let mut mat = DMatrix::zeros(2 * d, 2 * d);
    for j in 0..d {
        for i in 0..d {
            mat[(2 * i, 2 * j)] = rho_s.mat[(i, j)];
        }
    }
    DensityMatrix { mat }
}

/// Partial trace over the last qubit.
pub fn trace_out_fridge(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d2 = rho.dim();
    if !d2.is_multiple_of(2) {
        return Err(Error::OddDimension(d2));
    }
    let d = d2 / 2;
    let m = &rho.mat;
    let reduced = DMatrix::from_fn(d, d, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]);
    DensityMatrix::from_computed(reduced)
}

/// `Tr[P rho]` clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, projector: &DenseOperator) -> Result<f64> {
    Ok(trace_product(rho, projector)?.re.clamp(0.0, 1.0))
}

/// `Tr[O rho]`, real part.
pub fn expectation(rho: &DensityMatrix, o: &DenseOperator) -> Result<f64> {
    Ok(trace_product(rho, o)?.re)
}

/// `-sum λ log2 λ` over the eigenvalues of `rho` above the entropy floor.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s = spectrum_entropy_bits(rho.spectrum());
    s.min((rho.dim() as f64).log2())
}

/// `Tr[A B]` in O(d²) without forming the product.
fn trace_product(rho: &DensityMatrix, o: &DenseOperator) -> Result<C64> {
    check_same_dim(rho.dim(), o.dim())?;
    let (a, b) = (o.matrix(), rho.matrix());
    let d = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..d {
        for i in 0..d {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(acc)
}
