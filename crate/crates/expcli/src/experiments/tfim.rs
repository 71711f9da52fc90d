use qdcool::cooling::{bangbang_gamma, commutator_gap_estimate, CoolingStepParams, Evolution, StepSimulator};
use qdcool::models::build_coupling_operator;
use qdcool::protocols::{bangbang_schedule, run_protocol, ObservablesConfig};
use qdcool::qcore::{expectation, DensityMatrix};
use rayon::prelude::*;

use super::{par_map, tfim, BITS, ENERGY, PROBABILITY};
use crate::config::{BangbangTfimConfig, EnergySweepConfig, SweepStep};
use crate::error::Result;
use crate::table::{Cell, Column, ResultTable};

pub struct EnergySweepOutput {
    /// `J_over_B, eps, dE, eps_star`
    pub sweep: ResultTable,
    /// `J_over_B, eps_star, eps_argmin, dE_min, dE_star, grid_cell`
    pub summary: ResultTable,
}

/// Energy change of the maximally mixed state under one cooling step,
/// against the fridge energy, with the commutator estimate `eps_star` as a
/// marker.
pub fn exp_energy_sweep(c: &EnergySweepConfig) -> Result<EnergySweepOutput> {
    let grid = c.eps_grid();
    let mut sweep = ResultTable::new(
        "energy-sweep",
        vec![
            Column::real("J_over_B", ""),
            Column::real("eps", ENERGY),
            Column::real("dE", ENERGY),
            Column::real("eps_star", ENERGY),
        ],
    );
    let mut summary = ResultTable::new(
        "energy-sweep-summary",
        vec![
            Column::real("J_over_B", ""),
            Column::real("eps_star", ENERGY),
            Column::real("eps_argmin", ENERGY),
            Column::real("dE_min", ENERGY),
            Column::real("dE_star", ENERGY),
            Column::real("grid_cell", ENERGY),
        ],
    );
    let v = build_coupling_operator(c.coupling, c.n)?;
    for &ratio in &c.j_over_b {
        let h = tfim(c.n, ratio)?;
        let eps_star = commutator_gap_estimate(&h, &v)?;
        let sim = StepSimulator::new(h.clone())?;
        let rho = DensityMatrix::maximally_mixed(h.dim());
        let e_before = expectation(&rho, &h)?;
        let delta_e = |sim: &mut StepSimulator, eps: f64| -> Result<f64> {
            let params = match c.step {
                SweepStep::Bangbang => CoolingStepParams::bangbang(eps, c.coupling)?,
                SweepStep::Continuous => {
                    CoolingStepParams::new(eps, bangbang_gamma(eps), Evolution::Exact, c.coupling)?
                }
            };
            let out = sim.step(&rho, &params)?;
            Ok(expectation(&out, &h)? - e_before)
        };
        let mut points: Vec<(f64, f64)> = grid
            .par_iter()
            .map_with(sim.clone(), |sim, &eps| Ok((eps, delta_e(sim, eps)?)))
            .collect::<Result<_>>()?;
        let de_star = delta_e(&mut sim.clone(), eps_star)?;
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (eps_argmin, de_min) = points
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("grid is non-empty");
        for (eps, de) in points {
            sweep.push(vec![ratio.into(), eps.into(), de.into(), eps_star.into()])?;
        }
        summary.push(vec![
            ratio.into(),
            eps_star.into(),
            eps_argmin.into(),
            de_min.into(),
            de_star.into(),
            c.grid_cell().into(),
        ])?;
    }
    sweep.sort_canonical();
    summary.sort_canonical();
    Ok(EnergySweepOutput { sweep, summary })
}

pub struct BangbangOutput {
    /// `N, J_over_B, initial, step, fidelity, energy, entropy`
    pub trajectories: ResultTable,
    /// `N, J_over_B, initial, F_final`
    pub finals: ResultTable,
}

pub const INITIAL_MIXED: &str = "mixed";
pub const INITIAL_GROUND: &str = "ground";

/// BangBang runs on Ising chains from the maximally mixed state (cooling)
/// and from the exact ground state (steady-state reheating reference).
pub fn exp_bangbang_tfim(c: &BangbangTfimConfig, degeneracy_tol: Option<f64>) -> Result<BangbangOutput> {
    let mut jobs = Vec::new();
    for &n in &c.n_values {
        for &ratio in &c.j_over_b {
            for initial in [INITIAL_MIXED, INITIAL_GROUND] {
                jobs.push((n, ratio, initial));
            }
        }
    }
    let obs = ObservablesConfig {
        degeneracy_tol,
        ..Default::default()
    };
    let runs = par_map(jobs, |(n, ratio, initial)| {
        let h = tfim(n, ratio)?;
        let schedule = bangbang_schedule(&h, n, c.repetitions.unwrap_or(n))?;
        let mut sim = StepSimulator::new(h)?;
        let rho = match initial {
            INITIAL_MIXED => DensityMatrix::maximally_mixed(1 << n),
            _ => DensityMatrix::pure(&sim.spectrum().ground_state())?,
        };
        let records = run_protocol(&rho, &schedule, &mut sim, &obs)?;
        Ok((n, ratio, initial, records))
    })?;

    let mut trajectories = ResultTable::new(
        "bangbang-tfim",
        vec![
            Column::integer("N"),
            Column::real("J_over_B", ""),
            Column::text("initial"),
            Column::integer("step"),
            Column::real("fidelity", PROBABILITY),
            Column::real("energy", ENERGY),
            Column::real("entropy", BITS),
        ],
    );
    let mut finals = ResultTable::new(
        "bangbang-tfim-final",
        vec![
            Column::integer("N"),
            Column::real("J_over_B", ""),
            Column::text("initial"),
            Column::real("F_final", PROBABILITY),
        ],
    );
    for (n, ratio, initial, records) in runs {
        for r in &records {
            trajectories.push(vec![
                Cell::from(n),
                ratio.into(),
                initial.into(),
                r.step.into(),
                r.fidelity.into(),
                r.energy.into(),
                r.entropy.into(),
            ])?;
        }
        let last = records.last().expect("run_protocol records the initial state");
        finals.push(vec![n.into(), ratio.into(), initial.into(), last.fidelity.into()])?;
    }
    trajectories.sort_canonical();
    finals.sort_canonical();
    Ok(BangbangOutput { trajectories, finals })
}
