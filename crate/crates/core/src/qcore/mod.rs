//! Dense complex linear algebra and the quantum-channel primitives the
//! cooling simulation is built on.

mod operator;
mod spectral;
mod state;


pub use num_complex::Complex64 as C64;

pub use operator::{DenseOperator, Role, HERMITIAN_TOL, UNITARY_TOL};
pub use spectral::{
    evolve, ground_manifold_projector, hermitian_eig, spectrum_entropy_bits, EigenSystem,
    DEFAULT_DEGENERACY_FRACTION, ENTROPY_FLOOR,
};
pub use state::{
    append_fridge_ground, conjugate, expectation, fidelity, trace_out_fridge, von_neumann_entropy,
    DensityMatrix, CHANNEL_POSITIVITY_TOL, POSITIVITY_TOL, TRACE_TOL,
};

use nalgebra::DMatrix;

/// Largest entry modulus.
pub fn max_abs(mat: &DMatrix<C64>) -> f64 {
    mat.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()))
}

/// Tensor product `a ⊗ b`; entry `[(i*db + k), (j*db + l)] = a[i,j] * b[k,l]`.
pub fn kron(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    let role = match (a.role(), b.role()) {
        (Role::Hermitian, Role::Hermitian) => Role::Hermitian,
        (Role::Unitary, Role::Unitary) => Role::Unitary,
        _ => Role::General,
    };
    DenseOperator::with_role_unchecked(a.matrix().kronecker(b.matrix()), role)
}

/// Single-qubit Pauli matrices.
pub mod pauli {
    use super::{DenseOperator, Role, C64};
    use nalgebra::DMatrix;

    fn build(entries: [C64; 4]) -> DenseOperator {
        // Paulis are both Hermitian and unitary; Hermitian is the more useful tag.
        DenseOperator::with_role_unchecked(DMatrix::from_row_slice(2, 2, &entries), Role::Hermitian)
    }

    const O: C64 = C64::new(0.0, 0.0);
    const ONE: C64 = C64::new(1.0, 0.0);
    const I: C64 = C64::new(0.0, 1.0);

    pub fn identity() -> DenseOperator {
        build([ONE, O, O, ONE])
    }

    pub fn x() -> DenseOperator {
        build([O, ONE, ONE, O])
    }

    pub fn y() -> DenseOperator {
        build([O, -I, I, O])
    }

    pub fn z() -> DenseOperator {
        build([ONE, O, O, -ONE])
    }
}
