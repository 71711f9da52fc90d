//! A single cooling step: couple the system to a fresh fridge qubit, evolve
//! jointly (exactly or Trotterized), then discard the fridge.
//!
//! Also holds the closed-form parameter rules for the 1+1 model
//! (strong, weak and bang-bang coupling) and the `⊥`-norm fridge-energy
//! estimate used by the scalable protocols.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::models::{
    assemble_full_hamiltonian, build_coupling_operator, build_two_level, CouplingDescriptor,
    PauliAxis, TwoLevelParams,
};
use crate::qcore::{
    append_fridge_ground, conjugate, evolve, hermitian_eig, kron, max_abs_diff, pauli,
    trace_out_fridge, DenseOperator, DensityMatrix, EigenSystem, Role, C64,
};

/// How the coupled system + fridge evolution is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Evolution {
    /// `exp(-i H t)` of the full Hamiltonian.
    Exact,
    /// First-order product formula with the given Trotter number `M >= 1`.
    Trotter(u32),
}

impl Evolution {
    pub fn trotter_number(self) -> Option<u32> {
        match self {
            Evolution::Exact => None,
            Evolution::Trotter(m) => Some(m),
        }
    }
}

/// Parameters of one cooling step. The coupling time is always `pi / gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoolingStepParams {
    pub eps: f64,
    pub gamma: f64,
    pub time: f64,
    pub evolution: Evolution,
    pub coupling: CouplingDescriptor,
}

impl CoolingStepParams {
    pub fn new(eps: f64, gamma: f64, evolution: Evolution, coupling: CouplingDescriptor) -> Result<Self> {
        let params = Self {
            eps,
            gamma,
            time: coupling_time(gamma)?,
            evolution,
            coupling,
        };
        params.validate()?;
        Ok(params)
    }

    /// `gamma = 2 eps`, `M = 1`.
    pub fn bangbang(eps: f64, coupling: CouplingDescriptor) -> Result<Self> {
        Self::new(eps, bangbang_gamma(eps), Evolution::Trotter(1), coupling)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(invalid("eps", format!("must be > 0, got {}", self.eps)));
        }
        if !(self.gamma > 0.0) {
            return Err(invalid("gamma", format!("must be > 0, got {}", self.gamma)));
        }
        if (self.time - PI / self.gamma).abs() > 1e-12 * self.time.max(1.0) {
            return Err(invalid("time", "must equal pi / gamma"));
        }
        if self.evolution == Evolution::Trotter(0) {
            return Err(invalid("trotter_m", "must be >= 1"));
        }
        Ok(())
    }
}

/// Excited-to-ground and ground-to-excited probabilities of one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbabilities {
    pub p_cool: f64,
    pub p_reheat: f64,
}

/// `t = pi / gamma`: a full resonant swap of excitation into the fridge.
pub fn coupling_time(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(invalid("gamma", format!("must be > 0, got {gamma}")));
    }
    Ok(PI / gamma)
}

pub fn rabi_frequency(gamma: f64, eps: f64) -> f64 {
    (gamma * gamma / 4.0 + eps * eps).sqrt()
}

/// Closed-form probabilities of the 1+1 model on resonance.
pub fn analytic_resonant_probabilities(gamma: f64, eps: f64, t: f64) -> TransitionProbabilities {
    let omega = rabi_frequency(gamma, eps);
    let p_cool = (gamma * t / 2.0).sin().powi(2);
    let p_reheat = if omega > 0.0 {
        gamma * gamma * (t * omega).sin().powi(2) / (4.0 * omega * omega)
    } else {
        0.0
    };
    TransitionProbabilities { p_cool, p_reheat }
}

/// Coupling for which `Omega t = pi` at `t = pi/gamma`, cancelling reheating
/// in continuous time.
pub fn strong_coupling_gamma(eps: f64) -> f64 {
    2.0 / 3f64.sqrt() * eps
}

pub fn bangbang_gamma(eps: f64) -> f64 {
    2.0 * eps
}

/// Round a real lower bound up to the smallest compliant integer, ignoring
/// round-off just above an integer.
fn ceil_bound(x: f64) -> u32 {
    (x - 1e-9).ceil().max(1.0) as u32
}

/// `ceil(2 sqrt(1 + eps²/gamma²))`.
pub fn weak_coupling_trotter_number(eps: f64, gamma: f64) -> u32 {
    ceil_bound(2.0 * (1.0 + (eps / gamma).powi(2)).sqrt())
}

/// `ceil(2 sqrt(1 + (eps_j/2 + E_max/2)² / gamma_j²))`.
pub fn logsweep_trotter_number(eps_j: f64, gamma_j: f64, e_max: f64) -> u32 {
    let half = eps_j / 2.0 + e_max / 2.0;
    ceil_bound(2.0 * (1.0 + (half / gamma_j).powi(2)).sqrt())
}

/// Half the spectral spread of a Hermitian operator,
/// `max_{Φ,Ψ} (<Φ|O|Φ> - <Ψ|O|Ψ>) / 2`.
pub fn perpendicular_norm(o: &DenseOperator) -> Result<f64> {
    let eig = hermitian_eig(o)?;
    Ok(eig.spectral_range() / 2.0)
}

/// Fridge energy `|| i[V, H] ||_⊥` targeting the largest transition that the
/// coupling `V` drives directly.
pub fn commutator_gap_estimate(h_s: &DenseOperator, v_s: &DenseOperator) -> Result<f64> {
    if h_s.dim() != v_s.dim() {
        return Err(Error::DimMismatch {
            expected: h_s.dim(),
            found: v_s.dim(),
        });
    }
    if !h_s.is_hermitian() || !v_s.is_hermitian() {
        return Err(Error::NotHermitian { deviation: f64::NAN });
    }
    let comm = v_s.commutator(h_s)?;
    let i_comm = DenseOperator::general(comm.into_matrix() * C64::new(0.0, 1.0))?;
    perpendicular_norm(&i_comm.into_hermitian()?)
}

/// Number of qubits of a `2^n`-dimensional register.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim.is_power_of_two() {
        Ok(dim.trailing_zeros() as usize)
    } else {
        Err(Error::NotQubitRegister(dim))
    }
}

/// The full `2d x 2d` step unitary.
///
/// Exact mode diagonalizes the full Hamiltonian. Trotter mode returns the
/// symmetric product `A (B A)^M` with `A = exp(-i H_C t/(M+1))` and
/// `B = exp(-i (H_S + H_B) t/M)`.
pub fn coupled_evolution(
    h_s: &DenseOperator,
    v_s: &DenseOperator,
    eps: f64,
    gamma: f64,
    time: f64,
    evolution: Evolution,
) -> Result<DenseOperator> {
    match evolution {
        Evolution::Exact => evolve(&assemble_full_hamiltonian(h_s, eps, gamma, v_s)?, time),
        Evolution::Trotter(m) => {
            if m == 0 {
                return Err(invalid("trotter_m", "must be >= 1"));
            }
            let zero = DenseOperator::zeros(h_s.dim());
            let free = assemble_full_hamiltonian(h_s, eps, 0.0, &zero)?;
            let coupling = kron(v_s, &pauli::x()).scale(gamma / 2.0);
            let a = evolve(&coupling, time / f64::from(m + 1))?;
            let b = evolve(&free, time / f64::from(m))?;
            let ba = b.mul(&a)?;
            let mut u = a;
            for _ in 0..m {
                u = u.mul(&ba)?;
            }
            Ok(u)
        }
    }
}

pub fn build_step_unitary(h_s: &DenseOperator, params: &CoolingStepParams) -> Result<DenseOperator> {
    params.validate()?;
    let v_s = build_coupling_operator(params.coupling, qubit_count(h_s.dim())?)?;
    coupled_evolution(h_s, &v_s, params.eps, params.gamma, params.time, params.evolution)
}

/// One step through the reference route:
/// `trace_out_fridge(U (rho ⊗ |0><0|) U^†)`.
pub fn cooling_step_reference(
    rho_s: &DensityMatrix,
    h_s: &DenseOperator,
    params: &CoolingStepParams,
) -> Result<DensityMatrix> {
    let u = build_step_unitary(h_s, params)?;
    trace_out_fridge(&conjugate(&append_fridge_ground(rho_s), &u)?)
}

/// One cooling step on `rho_s`. Builds a fresh [`StepSimulator`]; use one
/// directly to amortize the diagonalization of `h_s` over many steps.
pub fn cooling_step(
    rho_s: &DensityMatrix,
    h_s: &DenseOperator,
    params: &CoolingStepParams,
) -> Result<DensityMatrix> {
    StepSimulator::new(h_s.clone())?.step(rho_s, params)
}

/// Cooling and reheating probabilities of the 1+1 model with system gap
/// `delta_system`, for any coupling time (the `t = pi/gamma` rule is not
/// imposed here so that time sweeps are possible).
pub fn simulate_1p1_probabilities(
    delta_system: f64,
    eps: f64,
    gamma: f64,
    t: f64,
    evolution: Evolution,
) -> Result<TransitionProbabilities> {
    let h_s = build_two_level(TwoLevelParams { gap: delta_system })?;
    let sim = StepSimulator::new(h_s)?;
    let v = CouplingAction::new(&pauli::x());
    let excited = DensityMatrix::basis(2, 1)?;
    let ground = DensityMatrix::basis(2, 0)?;
    let cooled = sim.step_with(&excited, &v, eps, gamma, t, evolution)?;
    let reheated = sim.step_with(&ground, &v, eps, gamma, t, evolution)?;
    Ok(TransitionProbabilities {
        p_cool: cooled.population(0).clamp(0.0, 1.0),
        p_reheat: reheated.population(1).clamp(0.0, 1.0),
    })
}

/// The two Kraus operators `K_f = (I ⊗ <f|) U (I ⊗ |0>)` of one step.
#[derive(Debug, Clone)]
pub struct StepKraus {
    pub k0: DMatrix<C64>,
    pub k1: DMatrix<C64>,
}

impl StepKraus {
    /// `K0 rho K0^† + K1 rho K1^†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.k0.nrows() {
            return Err(Error::DimMismatch {
                expected: self.k0.nrows(),
                found: rho.dim(),
            });
        }
        let m = rho.matrix();
        let out = &self.k0 * m * self.k0.adjoint() + &self.k1 * m * self.k1.adjoint();
        DensityMatrix::from_computed(out)
    }
}

/// How `exp(-i theta V ⊗ X)` acts on a pair of Kraus blocks.
#[derive(Debug, Clone)]
pub(crate) enum CouplingAction {
    /// `V² = I` with one non-zero per row (Pauli strings): row `i` of `V K`
    /// is `value[i] * K[col[i], :]`.
    Involution { cols: Vec<usize>, values: Vec<C64> },
    Dense { v: DenseOperator, eig: EigenSystem },
}

impl CouplingAction {
    pub(crate) fn new(v: &DenseOperator) -> Self {
        let m = v.matrix();
        let d = m.nrows();
        let mut cols = Vec::with_capacity(d);
        let mut values = Vec::with_capacity(d);
        let mut monomial = true;
        for i in 0..d {
            let nz: Vec<usize> = (0..d).filter(|&j| m[(i, j)].norm() > 0.0).collect();
            if nz.len() != 1 {
                monomial = false;
                break;
            }
            cols.push(nz[0]);
            values.push(m[(i, nz[0])]);
        }
        if monomial {
            let sq = m * m;
            if max_abs_diff(&sq, &DMatrix::identity(d, d)) < 1e-14 {
                return CouplingAction::Involution { cols, values };
            }
        }
        let eig = hermitian_eig(v).expect("coupling operators are Hermitian");
        CouplingAction::Dense { v: v.clone(), eig }
    }

    fn apply_v(cols: &[usize], values: &[C64], k: &DMatrix<C64>) -> DMatrix<C64> {
        let d = k.nrows();
        DMatrix::from_fn(d, k.ncols(), |i, j| values[i] * k[(cols[i], j)])
    }

    /// `(K0, K1) <- exp(-i theta V ⊗ X) (K0, K1)`.
    fn rotate(&self, theta: f64, k0: &mut DMatrix<C64>, k1: &mut DMatrix<C64>) {
        match self {
            CouplingAction::Involution { cols, values } => {
                let c = C64::new(theta.cos(), 0.0);
                let s = C64::new(0.0, -theta.sin());
                let vk0 = Self::apply_v(cols, values, k0);
                let vk1 = Self::apply_v(cols, values, k1);
                *k0 = &*k0 * c + vk1 * s;
                *k1 = &*k1 * c + vk0 * s;
            }
            CouplingAction::Dense { eig, .. } => {
                // Blocks of exp(-i θ V⊗X) in the fridge basis: cos(θV) on the
                // diagonal, -i sin(θV) off it.
                let cos = eig.apply_fn(|l| C64::new((theta * l).cos(), 0.0));
                let sin = eig.apply_fn(|l| C64::new(0.0, -(theta * l).sin()));
                let n0 = &cos * &*k0 + &sin * &*k1;
                let n1 = &sin * &*k0 + &cos * &*k1;
                *k0 = n0;
                *k1 = n1;
            }
        }
    }

    fn operator(&self, dim: usize) -> DenseOperator {
        match self {
            CouplingAction::Involution { cols, values } => {
                let mut m = DMatrix::zeros(dim, dim);
                for (i, (&c, &v)) in cols.iter().zip(values).enumerate() {
                    m[(i, c)] = v;
                }
                DenseOperator::with_role_unchecked(m, Role::Hermitian)
            }
            CouplingAction::Dense { v, .. } => v.clone(),
        }
    }
}

/// Cooling-step engine for a fixed system Hamiltonian. Caches the spectrum of
/// `H_S` and the structure of every coupling operator it has seen, and works
/// with the two `d x d` Kraus operators instead of the `2d x 2d` joint state.
#[derive(Debug, Clone)]
pub struct StepSimulator {
    h_s: DenseOperator,
    spectrum: EigenSystem,
    couplings: HashMap<CouplingDescriptor, CouplingAction>,
}

impl StepSimulator {
    pub fn new(h_s: DenseOperator) -> Result<Self> {
        let spectrum = hermitian_eig(&h_s)?;
        Ok(Self {
            h_s,
            spectrum,
            couplings: HashMap::new(),
        })
    }

    pub fn hamiltonian(&self) -> &DenseOperator {
        &self.h_s
    }

    pub fn spectrum(&self) -> &EigenSystem {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.h_s.dim()
    }

    fn coupling(&mut self, c: CouplingDescriptor) -> Result<&CouplingAction> {
        let n = qubit_count(self.dim())?;
        if c.site >= n {
            return Err(Error::SiteOutOfRange { site: c.site, n });
        }
        match self.couplings.entry(c) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(CouplingAction::new(&build_coupling_operator(c, n)?))),
        }
    }

    pub fn kraus(&mut self, params: &CoolingStepParams) -> Result<StepKraus> {
        params.validate()?;
        let action = self.coupling(params.coupling)?.clone();
        self.kraus_with(&action, params.eps, params.gamma, params.time, params.evolution)
    }

    pub fn step(&mut self, rho: &DensityMatrix, params: &CoolingStepParams) -> Result<DensityMatrix> {
        self.kraus(params)?.apply(rho)
    }

    /// Step with an arbitrary Hermitian coupling operator and coupling time.
    pub fn step_with_operator(
        &self,
        rho: &DensityMatrix,
        v_s: &DenseOperator,
        eps: f64,
        gamma: f64,
        time: f64,
        evolution: Evolution,
    ) -> Result<DensityMatrix> {
        if !v_s.is_hermitian() {
            return Err(Error::NotHermitian { deviation: f64::NAN });
        }
        if v_s.dim() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: v_s.dim(),
            });
        }
        self.step_with(rho, &CouplingAction::new(v_s), eps, gamma, time, evolution)
    }

    pub(crate) fn step_with(
        &self,
        rho: &DensityMatrix,
        v: &CouplingAction,
        eps: f64,
        gamma: f64,
        time: f64,
        evolution: Evolution,
    ) -> Result<DensityMatrix> {
        self.kraus_with(v, eps, gamma, time, evolution)?.apply(rho)
    }

    fn kraus_with(
        &self,
        v: &CouplingAction,
        eps: f64,
        gamma: f64,
        time: f64,
        evolution: Evolution,
    ) -> Result<StepKraus> {
        let d = self.dim();
        match evolution {
            Evolution::Exact => {
                let u = evolve(
                    &assemble_full_hamiltonian(&self.h_s, eps, gamma, &v.operator(d))?,
                    time,
                )?;
                let u = u.matrix();
                let k0 = DMatrix::from_fn(d, d, |i, j| u[(2 * i, 2 * j)]);
                let k1 = DMatrix::from_fn(d, d, |i, j| u[(2 * i + 1, 2 * j)]);
                Ok(StepKraus { k0, k1 })
            }
            Evolution::Trotter(m) => {
                if m == 0 {
                    return Err(invalid("trotter_m", "must be >= 1"));
                }
                let theta = gamma / 2.0 * time / f64::from(m + 1);
                let tau = time / f64::from(m);
                let w = self.spectrum.evolve(tau).into_matrix();
                // H_B = -(eps/2) Z: |0> picks up exp(+i eps tau / 2).
                let w0 = &w * C64::from_polar(1.0, eps * tau / 2.0);
                let w1 = &w * C64::from_polar(1.0, -eps * tau / 2.0);

                let mut k0 = DMatrix::identity(d, d);
                let mut k1 = DMatrix::zeros(d, d);
                v.rotate(theta, &mut k0, &mut k1);
                for _ in 0..m {
                    k0 = &w0 * &k0;
                    k1 = &w1 * &k1;
                    v.rotate(theta, &mut k0, &mut k1);
                }
                Ok(StepKraus { k0, k1 })
            }
        }
    }
}

/// Axis used by the 1+1 model: the system couples through `X`.
pub const ONE_PLUS_ONE_COUPLING: CouplingDescriptor = CouplingDescriptor {
    axis: PauliAxis::X,
    site: 0,
};
