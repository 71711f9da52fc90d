use std::f64::consts::PI;

use qdcool::cooling::{weak_coupling_trotter_number, CoolingStepParams, Evolution, StepSimulator};
use qdcool::models::{build_random_axis, CouplingDescriptor, PauliAxis, RandomAxisParams};
use qdcool::qcore::{fidelity, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{par_map, PROBABILITY};
use crate::config::{EvolutionMode, SphereSampling, SphereScanConfig};
use crate::error::Result;
use crate::table::{Cell, Column, ResultTable};

pub struct SphereScanOutput {
    /// `sequence, nx, ny, nz, p_final`
    pub points: ResultTable,
    /// `sequence, mean, std, min`
    pub summary: ResultTable,
}

/// Fibonacci lattice: `z_i = 1 - (2i + 1)/n`, azimuth advancing by the
/// golden angle.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            normalize([r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}

/// Uniform random directions (uniform `z` and azimuth).
pub fn random_sphere(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * PI);
            let r = (1.0 - z * z).max(0.0).sqrt();
            normalize([r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / norm)
}

/// Ground population of `H = h n.sigma` after the coupling sequence, starting
/// from the excited eigenstate. The fridge is tuned to the gap `2h` and every
/// step couples for `t = t_eps / eps`.
pub fn sphere_final_population(
    axis: [f64; 3],
    h: f64,
    t_eps: f64,
    sequence: &[PauliAxis],
    mode: EvolutionMode,
) -> Result<f64> {
    let hamiltonian = build_random_axis(RandomAxisParams { h, axis })?;
    let mut sim = StepSimulator::new(hamiltonian)?;
    let eps = 2.0 * h;
    // t = pi / gamma = t_eps / eps
    let gamma = PI * eps / t_eps;
    let evolution = match mode {
        EvolutionMode::Exact => Evolution::Exact,
        EvolutionMode::Trotter => Evolution::Trotter(weak_coupling_trotter_number(eps, gamma)),
    };
    let excited = sim.spectrum().eigenvectors().column(1).into_owned();
    let projector = sim.spectrum().ground_manifold_projector(sim.spectrum().default_degeneracy_tol());
    let mut rho = DensityMatrix::pure(&excited)?;
    for &a in sequence {
        let params = CoolingStepParams::new(eps, gamma, evolution, CouplingDescriptor::new(a, 0))?;
        rho = sim.step(&rho, &params)?;
    }
    Ok(fidelity(&rho, &projector)?)
}

/// Final ground population over a grid of field directions for each
/// coupling sequence, with mean, standard deviation and minimum per sequence.
pub fn exp_sphere_scan(c: &SphereScanConfig) -> Result<SphereScanOutput> {
    let sequences = c.parsed_sequences()?;
    let directions = match c.sampling {
        SphereSampling::Fibonacci => fibonacci_sphere(c.points),
        SphereSampling::Random => random_sphere(c.points, c.seed),
    };
    let jobs: Vec<(usize, [f64; 3])> = (0..sequences.len())
        .flat_map(|s| directions.iter().map(move |&d| (s, d)))
        .collect();
    let values = par_map(jobs.clone(), |(s, d)| {
        sphere_final_population(d, c.h, c.t_eps, &sequences[s], c.evolution)
    })?;

    let mut points = ResultTable::new(
        "sphere-scan",
        vec![
            Column::text("sequence"),
            Column::real("nx", ""),
            Column::real("ny", ""),
            Column::real("nz", ""),
            Column::real("p_final", PROBABILITY),
        ],
    );
    let mut summary = ResultTable::new(
        "sphere-scan-summary",
        vec![
            Column::text("sequence"),
            Column::real("mean", PROBABILITY),
            Column::real("std", PROBABILITY),
            Column::real("min", PROBABILITY),
        ],
    );
    for ((s, d), &p) in jobs.iter().zip(&values) {
        points.push(vec![
            Cell::from(c.sequences[*s].as_str()),
            d[0].into(),
            d[1].into(),
            d[2].into(),
            p.into(),
        ])?;
    }
    for (s, name) in c.sequences.iter().enumerate() {
        let ps: Vec<f64> = jobs
            .iter()
            .zip(&values)
            .filter(|((k, _), _)| *k == s)
            .map(|(_, &p)| p)
            .collect();
        let n = ps.len() as f64;
        let mean = ps.iter().sum::<f64>() / n;
        let std = (ps.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / n).sqrt();
        let min = ps.iter().copied().fold(f64::INFINITY, f64::min);
        summary.push(vec![name.as_str().into(), mean.into(), std.into(), min.into()])?;
    }
    points.sort_canonical();
    summary.sort_canonical();
    Ok(SphereScanOutput { points, summary })
}
