use nalgebra::DMatrix;

use super::{max_abs, C64};
use crate::error::{Error, Result};

/// Relative tolerance for the Hermitian role tag.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute tolerance on `max |U U^† - I|` for the unitary role tag.
pub const UNITARY_TOL: f64 = 1e-10;

/// What an operator is known to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    General,
    Hermitian,
    Unitary,
}

/// A square complex matrix acting on a qubit register.
///
/// Qubit 0 is the leftmost tensor factor (most significant bit of the basis
/// index). When a fridge qubit is present it is always the last factor.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    mat: DMatrix<C64>,
    role: Role,
}

impl DenseOperator {
    pub fn general(mat: DMatrix<C64>) -> Result<Self> {
        check_square(&mat)?;
        Ok(Self {
            mat,
            role: Role::General,
        })
    }

    /// Tags `mat` as Hermitian after checking
    /// `max |A - A^†| <= 1e-12 * max |A|`.
    pub fn hermitian(mat: DMatrix<C64>) -> Result<Self> {
        check_square(&mat)?;
        let deviation = hermitian_deviation(&mat);
        if deviation > HERMITIAN_TOL * max_abs(&mat) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            mat,
            role: Role::Hermitian,
        })
    }

    pub fn unitary(mat: DMatrix<C64>) -> Result<Self> {
        check_square(&mat)?;
        let deviation = unitary_deviation(&mat);
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            mat,
            role: Role::Unitary,
        })
    }

    /// Skips the invariant check; callers guarantee the role by construction.
    pub(crate) fn with_role_unchecked(mat: DMatrix<C64>, role: Role) -> Self {
        debug_assert!(mat.is_square());
        Self { mat, role }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
            role: Role::Unitary,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
            role: Role::Hermitian,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_hermitian(&self) -> bool {
        self.role == Role::Hermitian
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
            role: self.role,
        }
    }

    /// Matrix product. The product of two unitaries stays unitary.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_same_dim(self.dim(), rhs.dim())?;
        let role = match (self.role, rhs.role) {
            (Role::Unitary, Role::Unitary) => Role::Unitary,
            _ => Role::General,
        };
        Ok(Self {
            mat: &self.mat * &rhs.mat,
            role,
        })
    }

    /// Sum. Hermitian plus Hermitian stays Hermitian.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_same_dim(self.dim(), rhs.dim())?;
        let role = if self.role == Role::Hermitian && rhs.role == Role::Hermitian {
            Role::Hermitian
        } else {
            Role::General
        };
        Ok(Self {
            mat: &self.mat + &rhs.mat,
            role,
        })
    }

    /// Multiplication by a real scalar. Hermiticity survives, unitarity does
    /// not (unless the scalar is ±1).
    pub fn scale(&self, factor: f64) -> Self {
        let role = match self.role {
            Role::Hermitian => Role::Hermitian,
            Role::Unitary if factor.abs() == 1.0 => Role::Unitary,
            _ => Role::General,
        };
        Self {
            mat: &self.mat * C64::new(factor, 0.0),
            role,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        check_same_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            mat: &self.mat * &rhs.mat - &rhs.mat * &self.mat,
            role: Role::General,
        })
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// Re-tags a computed operator as Hermitian, checking the invariant.
    pub fn into_hermitian(self) -> Result<Self> {
        Self::hermitian(self.mat)
    }
}

pub(crate) fn check_square(mat: &DMatrix<C64>) -> Result<()> {
    if mat.is_square() && mat.nrows() > 0 {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: mat.nrows(),
            cols: mat.ncols(),
        })
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, found })
    }
}

pub(crate) fn hermitian_deviation(mat: &DMatrix<C64>) -> f64 {
    let n = mat.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn unitary_deviation(mat: &DMatrix<C64>) -> f64 {
    let n = mat.nrows();
    let prod = mat * mat.adjoint();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            worst = worst.max((prod[(i, j)] - target).norm());
        }
    }
    worst
}
