//! Hamiltonians and coupling operators: the two-level system, the random-axis
//! qubit, the open transverse-field Ising chain, and the full
//! system + fridge + coupling Hamiltonian.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qcore::{kron, pauli, DenseOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn matrix(self) -> DenseOperator {
        match self {
            PauliAxis::X => pauli::x(),
            PauliAxis::Y => pauli::y(),
            PauliAxis::Z => pauli::z(),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PauliAxis::X => "X",
            PauliAxis::Y => "Y",
            PauliAxis::Z => "Z",
        };
        f.write_str(c)
    }
}

/// Which single-qubit Pauli couples the system to the fridge, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CouplingDescriptor {
    pub axis: PauliAxis,
    pub site: usize,
}

impl CouplingDescriptor {
    pub fn new(axis: PauliAxis, site: usize) -> Self {
        Self { axis, site }
    }
}

impl fmt::Display for CouplingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.axis, self.site)
    }
}

/// Bare qubit with level splitting `gap`, `|0>` being the lower level:
/// `H = diag(-gap/2, +gap/2) = -(gap/2) Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    pub gap: f64,
}

/// `H = h (n · σ)` for a unit vector `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomAxisParams {
    pub h: f64,
    pub axis: [f64; 3],
}

/// Open transverse-field Ising chain
/// `H = sum_i B X_i + sum_i J Z_i Z_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TfimParams {
    pub n: usize,
    pub b: f64,
    pub j: f64,
}

/// Operator acting as the given Paulis on the listed sites of an `n`-qubit
/// register and as the identity elsewhere.
pub fn pauli_string(n: usize, factors: &[(usize, PauliAxis)]) -> Result<DenseOperator> {
    if n == 0 {
        return Err(invalid("n", "register needs at least one qubit"));
    }
    for &(site, _) in factors {
        if site >= n {
            return Err(Error::SiteOutOfRange { site, n });
        }
    }
    let factor_at = |q: usize| {
        factors
            .iter()
            .find(|(s, _)| *s == q)
            .map_or_else(pauli::identity, |(_, a)| a.matrix())
    };
    let mut out = factor_at(0);
    for q in 1..n {
        out = kron(&out, &factor_at(q));
    }
    Ok(out)
}

pub fn build_two_level(p: TwoLevelParams) -> Result<DenseOperator> {
    if !(p.gap > 0.0) {
        return Err(invalid("gap", format!("must be > 0, got {}", p.gap)));
    }
    Ok(pauli::z().scale(-p.gap / 2.0))
}

pub fn build_random_axis(p: RandomAxisParams) -> Result<DenseOperator> {
    let [nx, ny, nz] = p.axis;
    let norm = (nx * nx + ny * ny + nz * nz).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(invalid("axis", format!("must be a unit vector, norm is {norm}")));
    }
    if !(p.h > 0.0) {
        return Err(invalid("h", format!("must be > 0, got {}", p.h)));
    }
    let h = pauli::x()
        .scale(nx)
        .add(&pauli::y().scale(ny))?
        .add(&pauli::z().scale(nz))?;
    Ok(h.scale(p.h))
}

pub fn build_tfim(p: TfimParams) -> Result<DenseOperator> {
    if p.n < 2 {
        return Err(invalid("n", format!("chain needs at least 2 qubits, got {}", p.n)));
    }
    let dim = 1usize << p.n;
    let mut h = DenseOperator::zeros(dim);
    for i in 0..p.n {
        h = h.add(&pauli_string(p.n, &[(i, PauliAxis::X)])?.scale(p.b))?;
    }
    for i in 0..p.n - 1 {
        let zz = pauli_string(p.n, &[(i, PauliAxis::Z), (i + 1, PauliAxis::Z)])?;
        h = h.add(&zz.scale(p.j))?;
    }
    Ok(h)
}

/// Field and coupling on the unit circle `B² + J² = 1` at the given `J/B`.
pub fn tfim_from_ratio(n: usize, ratio: f64) -> Result<TfimParams> {
    if !(ratio >= 0.0) {
        return Err(invalid("ratio", format!("J/B must be >= 0, got {ratio}")));
    }
    let b = 1.0 / (1.0 + ratio * ratio).sqrt();
    Ok(TfimParams { n, b, j: ratio * b })
}

pub fn build_coupling_operator(c: CouplingDescriptor, n: usize) -> Result<DenseOperator> {
    pauli_string(n, &[(c.site, c.axis)])
}

/// `H_S ⊗ I + I ⊗ H_B + (gamma/2) V_S ⊗ X`, fridge last.
///
/// The fridge term `H_B = -(eps/2) Z` puts the reset state `|0>` at the bottom
/// of the fridge splitting, so a reset fridge absorbs energy `eps`.
pub fn assemble_full_hamiltonian(
    h_s: &DenseOperator,
    eps: f64,
    gamma: f64,
    v_s: &DenseOperator,
) -> Result<DenseOperator> {
    if h_s.dim() != v_s.dim() {
        return Err(Error::DimMismatch {
            expected: h_s.dim(),
            found: v_s.dim(),
        });
    }
    if !h_s.is_hermitian() || !v_s.is_hermitian() {
        return Err(Error::NotHermitian { deviation: f64::NAN });
    }
    let id_s = DenseOperator::hermitian(DMatrix::identity(h_s.dim(), h_s.dim()))?;
    let system = kron(h_s, &pauli::identity());
    let fridge = kron(&id_s, &pauli::z().scale(-eps / 2.0));
    let coupling = kron(v_s, &pauli::x()).scale(gamma / 2.0);
    system.add(&fridge)?.add(&coupling)
}
