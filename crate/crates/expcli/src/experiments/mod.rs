//! One function per experiment, each returning the tables it produces with
//! rows in canonical order. Grid points run on the current rayon pool.

mod logsweep;
mod sphere;
mod tfim;
mod two_level;

pub use logsweep::{exp_logsweep_1p1, exp_logsweep_tfim, Logsweep1p1Output};
pub use sphere::{exp_sphere_scan, fibonacci_sphere, random_sphere, sphere_final_population, SphereScanOutput};
pub use tfim::{exp_bangbang_tfim, exp_energy_sweep, BangbangOutput, EnergySweepOutput, INITIAL_GROUND, INITIAL_MIXED};
pub use two_level::{exp_detuning_curves, exp_trotter_curves};

use qdcool::models::{build_tfim, tfim_from_ratio};
use qdcool::qcore::{DenseOperator, DensityMatrix};
use qdcool::cooling::{CoolingStepParams, StepSimulator};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::Result;
use crate::table::ResultTable;

/// Unit labels. Energies are in units of the model scale (`B² + J² = 1` for
/// the Ising chain).
pub(crate) const ENERGY: &str = "energy";
pub(crate) const TIME: &str = "1/energy";
pub(crate) const PROBABILITY: &str = "probability";
pub(crate) const BITS: &str = "bits";

/// Runs one experiment and returns its tables.
pub fn run_experiment(id: ExperimentId, cfg: &ExperimentConfig) -> Result<Vec<ResultTable>> {
    cfg.validate(id)?;
    let tol = cfg.degeneracy_tol;
    let tables = match id {
        ExperimentId::TrotterCurves => vec![exp_trotter_curves(&cfg.trotter_curves)?],
        ExperimentId::DetuningCurves => vec![exp_detuning_curves(&cfg.detuning_curves)?],
        ExperimentId::SphereScan => {
            let out = exp_sphere_scan(&cfg.sphere_scan)?;
            vec![out.points, out.summary]
        }
        ExperimentId::EnergySweep => {
            let out = exp_energy_sweep(&cfg.energy_sweep)?;
            vec![out.sweep, out.summary]
        }
        ExperimentId::BangbangTfim => {
            let out = exp_bangbang_tfim(&cfg.bangbang_tfim, tol)?;
            vec![out.trajectories, out.finals]
        }
        ExperimentId::Logsweep1p1 => {
            let out = exp_logsweep_1p1(&cfg.logsweep_1p1)?;
            vec![out.steps, out.bands]
        }
        ExperimentId::LogsweepTfim => vec![exp_logsweep_tfim(&cfg.logsweep_tfim, tol)?],
    };
    Ok(tables)
}

pub(crate) fn tfim(n: usize, ratio: f64) -> Result<DenseOperator> {
    Ok(build_tfim(tfim_from_ratio(n, ratio)?)?)
}

/// Order-preserving parallel map with early error return.
pub(crate) fn par_map<T, R, F>(items: Vec<T>, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<R> + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// `(p_cool, p_reheat)` of one step on a two-level system whose ground state
/// is the first eigenvector of the simulator's Hamiltonian.
pub(crate) fn eigen_transition_probabilities(
    sim: &mut StepSimulator,
    params: &CoolingStepParams,
) -> Result<(f64, f64)> {
    let vecs = sim.spectrum().eigenvectors().clone();
    let ground = DensityMatrix::pure(&vecs.column(0).into_owned())?;
    let excited = DensityMatrix::pure(&vecs.column(1).into_owned())?;
    let cooled = sim.step(&excited, params)?;
    let reheated = sim.step(&ground, params)?;
    let g = vecs.column(0);
    let e = vecs.column(1);
    let p_cool = (g.adjoint() * cooled.matrix() * g)[(0, 0)].re;
    let p_reheat = (e.adjoint() * reheated.matrix() * e)[(0, 0)].re;
    Ok((p_cool.clamp(0.0, 1.0), p_reheat.clamp(0.0, 1.0)))
}
