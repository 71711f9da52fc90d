use qdcool::cooling::StepSimulator;
use qdcool::models::{build_two_level, TwoLevelParams};
use qdcool::protocols::{
    all_single_site_couplings, apply_schedule, default_energy_band, logsweep_rungs, logsweep_schedule,
    LogSweepConfig,
};
use qdcool::qcore::{fidelity, DensityMatrix};

use super::{eigen_transition_probabilities, par_map, tfim, ENERGY, PROBABILITY};
use crate::config::{Logsweep1p1Config, LogsweepTfimConfig};
use crate::error::Result;
use crate::table::{Cell, Column, ResultTable};

pub struct Logsweep1p1Output {
    /// `Delta, step, eps, p_cool, p_reheat, p_final`
    pub steps: ResultTable,
    /// `j, eps, delta, gamma, M, band_lo, band_hi`
    pub bands: ResultTable,
}

/// LogSweep on a single qubit of unknown gap. For every gap on the grid and
/// every step: the step's own cooling and reheating probabilities, and the
/// ground population after the sequence so far (starting from the excited
/// state).
pub fn exp_logsweep_1p1(c: &Logsweep1p1Config) -> Result<Logsweep1p1Output> {
    let ls = LogSweepConfig {
        linewidth_factor: c.linewidth_factor,
        ..LogSweepConfig::new(c.k, c.e_min, c.e_max)?
    }
    .with_axes(c.axes.clone());

    let mut bands = ResultTable::new(
        "logsweep-1p1-bands",
        vec![
            Column::integer("j"),
            Column::real("eps", ENERGY),
            Column::real("delta", ENERGY),
            Column::real("gamma", ENERGY),
            Column::integer("M"),
            Column::real("band_lo", ENERGY),
            Column::real("band_hi", ENERGY),
        ],
    );
    for (j, r) in logsweep_rungs(&ls)?.iter().enumerate() {
        bands.push(vec![
            Cell::from(j + 1),
            r.eps.into(),
            r.delta.into(),
            r.gamma.into(),
            r.trotter_m.into(),
            (r.eps - r.delta).into(),
            (r.eps + r.delta).into(),
        ])?;
    }

    let per_gap = par_map(c.gap_grid(), |gap| {
        let h = build_two_level(TwoLevelParams { gap })?;
        let schedule = logsweep_schedule(&h, 1, &ls)?;
        let mut sim = StepSimulator::new(h)?;
        let mut rho = DensityMatrix::basis(2, 1)?;
        let mut rows = Vec::with_capacity(schedule.len());
        for (i, params) in schedule.steps.iter().enumerate() {
            let (p_cool, p_reheat) = eigen_transition_probabilities(&mut sim, params)?;
            rho = sim.step(&rho, params)?;
            rows.push(vec![
                Cell::from(gap),
                (i + 1).into(),
                params.eps.into(),
                p_cool.into(),
                p_reheat.into(),
                rho.population(0).clamp(0.0, 1.0).into(),
            ]);
        }
        Ok(rows)
    })?;
    let mut steps = ResultTable::new(
        "logsweep-1p1",
        vec![
            Column::real("Delta", ENERGY),
            Column::integer("step"),
            Column::real("eps", ENERGY),
            Column::real("p_cool", PROBABILITY),
            Column::real("p_reheat", PROBABILITY),
            Column::real("p_final", PROBABILITY),
        ],
    );
    steps.extend(per_gap.into_iter().flatten())?;
    steps.sort_canonical();
    bands.sort_canonical();
    Ok(Logsweep1p1Output { steps, bands })
}

/// Final ground-manifold fidelity of LogSweep from the maximally mixed
/// state, over `K` at fixed `N` and over `N` at fixed `K`, for each phase.
/// The band is the default one: first gap above the ground manifold up to
/// the largest single-site transition estimate.
pub fn exp_logsweep_tfim(c: &LogsweepTfimConfig, degeneracy_tol: Option<f64>) -> Result<ResultTable> {
    let mut jobs: Vec<(f64, usize, usize)> = Vec::new();
    for &ratio in &c.j_over_b {
        jobs.extend(c.k_values.iter().map(|&k| (ratio, c.n, k)));
        jobs.extend(c.n_values.iter().map(|&n| (ratio, n, c.k)));
    }
    jobs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    jobs.dedup();

    let rows = par_map(jobs, |(ratio, n, k)| {
        let f = logsweep_tfim_fidelity(ratio, n, k, c, degeneracy_tol)?;
        Ok(vec![Cell::from(ratio), n.into(), k.into(), f.into(), (1.0 - f).into()])
    })?;
    let mut table = ResultTable::new(
        "logsweep-tfim",
        vec![
            Column::real("J_over_B", ""),
            Column::integer("N"),
            Column::integer("K"),
            Column::real("F_final", PROBABILITY),
            Column::real("one_minus_F", PROBABILITY),
        ],
    );
    table.extend(rows)?;
    table.sort_canonical();
    Ok(table)
}

fn logsweep_tfim_fidelity(
    ratio: f64,
    n: usize,
    k: usize,
    c: &LogsweepTfimConfig,
    degeneracy_tol: Option<f64>,
) -> Result<f64> {
    let h = tfim(n, ratio)?;
    let (e_min, e_max) = default_energy_band(&h, &all_single_site_couplings(n), degeneracy_tol)?;
    let cfg = LogSweepConfig {
        linewidth_factor: c.linewidth_factor,
        loop_order: c.loop_order,
        ..LogSweepConfig::new(k, e_min, e_max)?
    };
    let schedule = logsweep_schedule(&h, n, &cfg)?;
    let mut sim = StepSimulator::new(h)?;
    let tol = degeneracy_tol.unwrap_or_else(|| sim.spectrum().default_degeneracy_tol());
    let projector = sim.spectrum().ground_manifold_projector(tol);
    let rho = apply_schedule(&DensityMatrix::maximally_mixed(1 << n), &schedule, &mut sim)?;
    Ok(fidelity(&rho, &projector)?)
}
