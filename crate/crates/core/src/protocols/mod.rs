//! Cooling protocols for `N`-qubit systems and the executor that runs them.
//!
//! BangBang couples `Y` on every site in turn at the strong-coupling
//! bang-bang point, with the fridge energy set by the `⊥`-norm estimate.
//! LogSweep walks a geometric ladder of fridge energies from high to low at
//! weak coupling, cycling through `X`, `Y`, `Z` couplings on every site.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cooling::{
    commutator_gap_estimate, logsweep_trotter_number, CoolingStepParams, Evolution, StepSimulator,
};
use crate::error::{invalid, Error, Result};
use crate::models::{build_coupling_operator, CouplingDescriptor, PauliAxis};
use crate::qcore::{
    expectation, fidelity, hermitian_eig, spectrum_entropy_bits, DenseOperator, DensityMatrix,
    CHANNEL_POSITIVITY_TOL,
};

/// Where a schedule came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    BangBang { repetitions: usize },
    LogSweep { k: usize, e_min: f64, e_max: f64 },
    Custom,
}

/// Ordered list of cooling steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub steps: Vec<CoolingStepParams>,
    pub provenance: Provenance,
}

impl Schedule {
    pub fn custom(steps: Vec<CoolingStepParams>) -> Result<Self> {
        for s in &steps {
            s.validate()?;
        }
        Ok(Self {
            steps,
            provenance: Provenance::Custom,
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Nesting of the LogSweep loops below the energy rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopOrder {
    /// for each energy, for each site, for each axis
    #[default]
    EnergyOuter,
    /// for each site, for each energy, for each axis
    SiteOuter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSweepConfig {
    /// Gradation number, at least 2.
    pub k: usize,
    pub e_min: f64,
    pub e_max: f64,
    /// `gamma_j = linewidth_factor * delta_j`. The default `pi` makes the
    /// linewidth the inverse coupling time, `delta_j = 1 / t_j`.
    pub linewidth_factor: f64,
    /// Coupling axes cycled on every site.
    pub axes: Vec<PauliAxis>,
    pub loop_order: LoopOrder,
}

impl LogSweepConfig {
    pub fn new(k: usize, e_min: f64, e_max: f64) -> Result<Self> {
        let cfg = Self {
            k,
            e_min,
            e_max,
            linewidth_factor: PI,
            axes: PauliAxis::ALL.to_vec(),
            loop_order: LoopOrder::EnergyOuter,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_axes(mut self, axes: Vec<PauliAxis>) -> Self {
        self.axes = axes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(invalid("k", format!("gradation number must be >= 2, got {}", self.k)));
        }
        if !(self.e_min > 0.0) {
            return Err(invalid("e_min", format!("must be > 0, got {}", self.e_min)));
        }
        if !(self.e_max > self.e_min) {
            return Err(invalid(
                "e_max",
                format!("must exceed e_min = {}, got {}", self.e_min, self.e_max),
            ));
        }
        if !(self.linewidth_factor > 0.0) {
            return Err(invalid("linewidth_factor", "must be > 0"));
        }
        if self.axes.is_empty() {
            return Err(invalid("axes", "at least one coupling axis is needed"));
        }
        Ok(())
    }
}

/// One energy rung of a LogSweep ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogSweepRung {
    pub eps: f64,
    pub delta: f64,
    pub gamma: f64,
    pub trotter_m: u32,
}

/// Per-step observables recorded by [`run_protocol`]. Record 0 is the
/// initial state and carries no step parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub fidelity: f64,
    pub energy: f64,
    pub entropy: f64,
    pub params: Option<CoolingStepParams>,
}

/// What [`run_protocol`] measures.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservablesConfig {
    /// Ground-manifold tolerance; `None` uses `1e-3` of the spectral range.
    pub degeneracy_tol: Option<f64>,
    /// Record every `record_every`-th step (the last step is always kept).
    pub record_every: usize,
}

impl Default for ObservablesConfig {
    fn default() -> Self {
        Self {
            degeneracy_tol: None,
            record_every: 1,
        }
    }
}

/// `R` passes over all sites with a `Y` coupling, bang-bang parameters and
/// `eps = || i[Y_site, H_S] ||_⊥`.
pub fn bangbang_schedule(h_s: &DenseOperator, n: usize, r: usize) -> Result<Schedule> {
    if r < 1 {
        return Err(invalid("r", "at least one repetition is needed"));
    }
    let mut per_site = Vec::with_capacity(n);
    for site in 0..n {
        let coupling = CouplingDescriptor::new(PauliAxis::Y, site);
        let v = build_coupling_operator(coupling, n)?;
        let eps = commutator_gap_estimate(h_s, &v)?;
        per_site.push(CoolingStepParams::bangbang(eps, coupling)?);
    }
    let steps = (0..r).flat_map(|_| per_site.iter().copied()).collect();
    Ok(Schedule {
        steps,
        provenance: Provenance::BangBang { repetitions: r },
    })
}

/// `eps_j = E_min^((j-1)/(K-1)) E_max^(1-(j-1)/(K-1))`, `j = 1..K`.
pub fn logsweep_energies(cfg: &LogSweepConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let k = cfg.k;
    Ok((0..k)
        .map(|j| {
            let s = j as f64 / (k - 1) as f64;
            cfg.e_min.powf(s) * cfg.e_max.powf(1.0 - s)
        })
        .collect())
}

/// Linewidths `delta_j = eps_j (1 - r)/(1 + r)` for a geometric ladder with
/// ratio `r`, so that `eps_{j+1} + delta_{j+1} = eps_j - delta_j`, and the
/// couplings `gamma_j = linewidth_factor * delta_j`.
pub fn logsweep_linewidths(energies: &[f64], linewidth_factor: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if energies.len() < 2 {
        return Err(invalid("energies", "need at least two rungs"));
    }
    let r = energies[1] / energies[0];
    if !(r > 0.0 && r < 1.0) {
        return Err(invalid("energies", "must be positive and strictly decreasing"));
    }
    let shrink = (1.0 - r) / (1.0 + r);
    let deltas: Vec<f64> = energies.iter().map(|e| e * shrink).collect();
    let gammas = deltas.iter().map(|d| linewidth_factor * d).collect();
    Ok((deltas, gammas))
}

/// Energies, linewidths, couplings and Trotter numbers of every rung.
pub fn logsweep_rungs(cfg: &LogSweepConfig) -> Result<Vec<LogSweepRung>> {
    let energies = logsweep_energies(cfg)?;
    let (deltas, gammas) = logsweep_linewidths(&energies, cfg.linewidth_factor)?;
    Ok(energies
        .iter()
        .zip(&deltas)
        .zip(&gammas)
        .map(|((&eps, &delta), &gamma)| LogSweepRung {
            eps,
            delta,
            gamma,
            trotter_m: logsweep_trotter_number(eps, gamma, cfg.e_max),
        })
        .collect())
}

/// `|axes| * N * K` weak-coupling steps sweeping the fridge energy from
/// `E_max` down to `E_min`.
pub fn logsweep_schedule(h_s: &DenseOperator, n: usize, cfg: &LogSweepConfig) -> Result<Schedule> {
    if h_s.dim() != 1 << n {
        return Err(Error::DimMismatch {
            expected: 1 << n,
            found: h_s.dim(),
        });
    }
    let rungs = logsweep_rungs(cfg)?;
    let step = |rung: &LogSweepRung, site: usize, axis: PauliAxis| {
        CoolingStepParams::new(
            rung.eps,
            rung.gamma,
            Evolution::Trotter(rung.trotter_m),
            CouplingDescriptor::new(axis, site),
        )
    };
    let mut steps = Vec::with_capacity(cfg.axes.len() * n * cfg.k);
    match cfg.loop_order {
        LoopOrder::EnergyOuter => {
            for rung in &rungs {
                for site in 0..n {
                    for &axis in &cfg.axes {
                        steps.push(step(rung, site, axis)?);
                    }
                }
            }
        }
        LoopOrder::SiteOuter => {
            for site in 0..n {
                for rung in &rungs {
                    for &axis in &cfg.axes {
                        steps.push(step(rung, site, axis)?);
                    }
                }
            }
        }
    }
    Ok(Schedule {
        steps,
        provenance: Provenance::LogSweep {
            k: cfg.k,
            e_min: cfg.e_min,
            e_max: cfg.e_max,
        },
    })
}

/// `(E_min, E_max)`: the first gap above the ground manifold, and the
/// largest `⊥`-norm transition energy over the given couplings.
pub fn default_energy_band(
    h_s: &DenseOperator,
    couplings: &[CouplingDescriptor],
    degeneracy_tol: Option<f64>,
) -> Result<(f64, f64)> {
    let eig = hermitian_eig(h_s)?;
    let tol = degeneracy_tol.unwrap_or_else(|| eig.default_degeneracy_tol());
    let e_min = eig.gap_above(tol)?;
    let n = crate::cooling::qubit_count(h_s.dim())?;
    let mut e_max = 0.0f64;
    for &c in couplings {
        let v = build_coupling_operator(c, n)?;
        e_max = e_max.max(commutator_gap_estimate(h_s, &v)?);
    }
    Ok((e_min, e_max.max(e_min)))
}

/// Every single-qubit Pauli coupling on `n` sites.
pub fn all_single_site_couplings(n: usize) -> Vec<CouplingDescriptor> {
    (0..n)
        .flat_map(|site| PauliAxis::ALL.map(|axis| CouplingDescriptor::new(axis, site)))
        .collect()
}

/// Applies the schedule step by step, recording fidelity with the ground
/// manifold of `H_S`, the energy and the entropy (in bits).
///
/// Every recorded state is checked for positivity; a violation beyond the
/// channel floor is an error.
pub fn run_protocol(
    rho_0: &DensityMatrix,
    schedule: &Schedule,
    sim: &mut StepSimulator,
    observables: &ObservablesConfig,
) -> Result<Vec<TrajectoryRecord>> {
    if rho_0.dim() != sim.dim() {
        return Err(Error::DimMismatch {
            expected: sim.dim(),
            found: rho_0.dim(),
        });
    }
    if observables.record_every == 0 {
        return Err(invalid("record_every", "must be >= 1"));
    }
    let tol = observables
        .degeneracy_tol
        .unwrap_or_else(|| sim.spectrum().default_degeneracy_tol());
    let projector = sim.spectrum().ground_manifold_projector(tol);
    let h_s = sim.hamiltonian().clone();

    let record = |step: usize, rho: &DensityMatrix, params: Option<CoolingStepParams>| {
        let spectrum = rho.spectrum();
        if spectrum[0] < -CHANNEL_POSITIVITY_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: spectrum[0],
            });
        }
        Ok(TrajectoryRecord {
            step,
            fidelity: fidelity(rho, &projector)?,
            energy: expectation(rho, &h_s)?,
            entropy: spectrum_entropy_bits(spectrum).min((rho.dim() as f64).log2()),
            params,
        })
    };

    let mut out = vec![record(0, rho_0, None)?];
    let mut rho = rho_0.clone();
    let total = schedule.steps.len();
    for (i, params) in schedule.steps.iter().enumerate() {
        rho = sim.step(&rho, params)?;
        let step = i + 1;
        if step % observables.record_every == 0 || step == total {
            out.push(record(step, &rho, Some(*params))?);
        }
    }
    Ok(out)
}

/// Final state of a schedule without recording observables.
pub fn apply_schedule(
    rho_0: &DensityMatrix,
    schedule: &Schedule,
    sim: &mut StepSimulator,
) -> Result<DensityMatrix> {
    let mut rho = rho_0.clone();
    for params in &schedule.steps {
        rho = sim.step(&rho, params)?;
    }
    Ok(rho)
}

#[cfg(test)]
mod tests;
