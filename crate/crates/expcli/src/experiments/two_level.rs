use qdcool::cooling::{bangbang_gamma, coupling_time, simulate_1p1_probabilities, weak_coupling_trotter_number, Evolution};

use super::{par_map, PROBABILITY, TIME};
use crate::config::{DetuningCurvesConfig, EvolutionMode, TrotterCurvesConfig};
use crate::error::Result;
use crate::table::{Cell, Column, ResultTable};

/// Cooling and reheating probabilities of the resonant 1+1 model against the
/// coupling time, for each Trotter number, with the continuous-time reheating
/// curve alongside.
pub fn exp_trotter_curves(c: &TrotterCurvesConfig) -> Result<ResultTable> {
    let mut table = ResultTable::new(
        "trotter-curves",
        vec![
            Column::integer("M"),
            Column::real("t", TIME),
            Column::real("p_cool", PROBABILITY),
            Column::real("p_reheat", PROBABILITY),
            Column::real("p_reheat_exact", PROBABILITY),
        ],
    );
    let grid = c.t_grid();
    let jobs: Vec<(u32, f64)> = c
        .m_values
        .iter()
        .flat_map(|&m| grid.iter().map(move |&t| (m, t)))
        .collect();
    let rows = par_map(jobs, |(m, t)| {
        let trot = simulate_1p1_probabilities(c.eps, c.eps, c.gamma, t, Evolution::Trotter(m))?;
        let exact = simulate_1p1_probabilities(c.eps, c.eps, c.gamma, t, Evolution::Exact)?;
        Ok(vec![
            Cell::from(m),
            t.into(),
            trot.p_cool.into(),
            trot.p_reheat.into(),
            exact.p_reheat.into(),
        ])
    })?;
    table.extend(rows)?;
    table.sort_canonical();
    Ok(table)
}

/// Cooling and reheating probabilities against the detuning
/// `delta = Delta - eps` at fixed fridge energy, for bang-bang and
/// weak-coupling steps.
pub fn exp_detuning_curves(c: &DetuningCurvesConfig) -> Result<ResultTable> {
    let mut table = ResultTable::new(
        "detuning-curves",
        vec![
            Column::text("mode"),
            Column::real("gamma", super::ENERGY),
            Column::real("delta", super::ENERGY),
            Column::real("p_cool", PROBABILITY),
            Column::real("p_reheat", PROBABILITY),
        ],
    );
    let mut curves: Vec<(&str, f64, Evolution)> = Vec::new();
    if c.bangbang {
        curves.push(("bangbang", bangbang_gamma(c.eps), Evolution::Trotter(1)));
    }
    for &g in &c.weak_gammas {
        let evo = match c.weak_evolution {
            EvolutionMode::Exact => Evolution::Exact,
            EvolutionMode::Trotter => Evolution::Trotter(weak_coupling_trotter_number(c.eps, g)),
        };
        curves.push(("weak", g, evo));
    }
    let grid = c.delta_grid();
    let jobs: Vec<_> = curves
        .iter()
        .flat_map(|&curve| grid.iter().map(move |&d| (curve, d)))
        .collect();
    let rows = par_map(jobs, |((mode, gamma, evo), delta)| {
        let t = coupling_time(gamma)?;
        let p = simulate_1p1_probabilities(c.eps + delta, c.eps, gamma, t, evo)?;
        Ok(vec![mode.into(), gamma.into(), delta.into(), p.p_cool.into(), p.p_reheat.into()])
    })?;
    table.extend(rows)?;
    table.sort_canonical();
    Ok(table)
}
