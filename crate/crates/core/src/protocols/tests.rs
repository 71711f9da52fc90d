use proptest::prelude::*;

use super::*;
use crate::models::{build_tfim, build_two_level, tfim_from_ratio, TwoLevelParams};
use crate::testutil::{jacobi_eigenvalues, random_density, random_hermitian, real_part, rng};

/// Worst final ground population of a K=5 LogSweep over (1, 5) for the 1+1
/// model, over 50 gaps in (1, 5). Regression floor from a reference run
/// (observed minimum 0.87932).
const LOGSWEEP_1P1_FLOOR: f64 = 0.879;

fn two_level(gap: f64) -> DenseOperator {
    build_two_level(TwoLevelParams { gap }).unwrap()
}

fn tfim(n: usize, ratio: f64) -> DenseOperator {
    build_tfim(tfim_from_ratio(n, ratio).unwrap()).unwrap()
}

fn entropy_drops(records: &[TrajectoryRecord]) -> impl Iterator<Item = f64> + '_ {
    records.windows(2).map(|w| w[0].entropy - w[1].entropy)
}

#[test]
fn bangbang_single_qubit() {
    let h = two_level(1.3);
    let s = bangbang_schedule(&h, 1, 1).unwrap();
    assert_eq!(s.len(), 1);
    let p = s.steps[0];
    assert!((p.eps - 1.3).abs() < 1e-12);
    assert!((p.gamma - 2.6).abs() < 1e-12);
    let mut sim = StepSimulator::new(h).unwrap();
    let rho = apply_schedule(&DensityMatrix::basis(2, 1).unwrap(), &s, &mut sim).unwrap();
    assert!(rho.population(0) > 1.0 - 1e-9);
}

#[test]
fn bangbang_tfim_layout() {
    let n = 5;
    let h = tfim(n, 2.0);
    let s = bangbang_schedule(&h, n, n).unwrap();
    assert_eq!(s.len(), 25);
    assert_eq!(s.provenance, Provenance::BangBang { repetitions: 5 });
    for (i, p) in s.steps.iter().enumerate() {
        assert_eq!(p.evolution, Evolution::Trotter(1));
        assert_eq!(p.coupling, CouplingDescriptor::new(PauliAxis::Y, i % n));
        assert!((p.gamma - 2.0 * p.eps).abs() < 1e-12);
        assert!((p.time - PI / p.gamma).abs() < 1e-12);
    }
    assert!(bangbang_schedule(&h, n, 0).is_err());
}

#[test]
fn logsweep_energy_examples() {
    let e = logsweep_energies(&LogSweepConfig::new(2, 1.0, 5.0).unwrap()).unwrap();
    assert_eq!(e.len(), 2);
    assert!((e[0] - 5.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);

    let e = logsweep_energies(&LogSweepConfig::new(5, 1.0, 5.0).unwrap()).unwrap();
    let expected = [5.0, 3.3437, 2.2361, 1.4953, 1.0];
    for (a, b) in e.iter().zip(expected) {
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }
    assert!((e[1] - 5f64.powf(0.75)).abs() < 1e-12);
    let r0 = e[1] / e[0];
    for w in e.windows(2) {
        assert!(w[1] < w[0]);
        assert!((w[1] / w[0] - r0).abs() < 1e-12);
    }
}

#[test]
fn logsweep_config_validation() {
    assert!(LogSweepConfig::new(1, 1.0, 5.0).is_err());
    assert!(LogSweepConfig::new(3, 0.0, 5.0).is_err());
    assert!(LogSweepConfig::new(3, 5.0, 5.0).is_err());
    assert!(LogSweepConfig::new(3, 5.0, 1.0).is_err());
    let cfg = LogSweepConfig::new(3, 1.0, 5.0).unwrap().with_axes(vec![]);
    assert!(cfg.validate().is_err());
    match LogSweepConfig::new(1, 1.0, 5.0) {
        Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, "k"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn linewidth_examples() {
    let (d, g) = logsweep_linewidths(&[5.0, 1.0], PI).unwrap();
    assert!((d[0] - 10.0 / 3.0).abs() < 1e-12);
    assert!((d[1] - 2.0 / 3.0).abs() < 1e-12);
    assert!((1.0 + d[1] - (5.0 - d[0])).abs() < 1e-12);
    assert!((g[0] - PI * d[0]).abs() < 1e-12);

    let (_, g_alt) = logsweep_linewidths(&[5.0, 1.0], 1.0 / PI).unwrap();
    assert!((g_alt[0] - d[0] / PI).abs() < 1e-12);

    assert!(logsweep_linewidths(&[1.0, 5.0], PI).is_err());
    assert!(logsweep_linewidths(&[1.0], PI).is_err());
}

#[test]
fn linewidths_tile_band() {
    for k in [2, 3, 5, 10, 40] {
        let cfg = LogSweepConfig::new(k, 0.7, 9.0).unwrap();
        let e = logsweep_energies(&cfg).unwrap();
        let (d, _) = logsweep_linewidths(&e, PI).unwrap();
        for j in 0..k - 1 {
            let residual = (e[j + 1] + d[j + 1] - (e[j] - d[j])).abs();
            assert!(residual <= 1e-10 * cfg.e_max, "k={k} j={j} residual {residual}");
        }
        // intervals stay inside the positive axis and cover the band edges
        assert!(e[0] + d[0] >= cfg.e_max);
        assert!(e[k - 1] - d[k - 1] <= cfg.e_min && e[k - 1] - d[k - 1] > 0.0);
    }
}

#[test]
fn linewidths_shrink_with_k() {
    let widest = |k| {
        let e = logsweep_energies(&LogSweepConfig::new(k, 1.0, 5.0).unwrap()).unwrap();
        logsweep_linewidths(&e, PI).unwrap().0[0]
    };
    assert!(widest(10) < widest(5));
    assert!(widest(1000) < 0.01);
}

#[test]
fn logsweep_schedule_layout() {
    let h = two_level(2.0);
    let cfg = LogSweepConfig::new(2, 1.0, 5.0).unwrap();
    let s = logsweep_schedule(&h, 1, &cfg).unwrap();
    assert_eq!(s.len(), 6);
    let axes: Vec<_> = s.steps.iter().map(|p| p.coupling.axis).collect();
    assert_eq!(axes, [PauliAxis::X, PauliAxis::Y, PauliAxis::Z].repeat(2));

    let n = 3;
    let h = tfim(n, 1.0);
    let cfg = LogSweepConfig::new(4, 0.5, 4.0).unwrap();
    let energies = logsweep_energies(&cfg).unwrap();
    let rungs = logsweep_rungs(&cfg).unwrap();
    let s = logsweep_schedule(&h, n, &cfg).unwrap();
    assert_eq!(s.len(), 3 * n * 4);
    for (i, p) in s.steps.iter().enumerate() {
        let rung = &rungs[i / (3 * n)];
        assert_eq!(p.eps, energies[i / (3 * n)]);
        assert_eq!(p.gamma, rung.gamma);
        assert_eq!(p.evolution, Evolution::Trotter(rung.trotter_m));
        assert_eq!(p.coupling.site, (i / 3) % n);
        assert_eq!(p.coupling.axis, PauliAxis::ALL[i % 3]);
    }

    let site_outer = LogSweepConfig {
        loop_order: LoopOrder::SiteOuter,
        ..cfg.clone()
    };
    let s2 = logsweep_schedule(&h, n, &site_outer).unwrap();
    assert_eq!(s2.len(), s.len());
    assert_eq!(s2.steps[0].coupling.site, 0);
    assert_eq!(s2.steps[3].eps, energies[1]);
    assert!(logsweep_schedule(&h, 2, &cfg).is_err());
}

#[test]
fn large_logsweep_step_count() {
    // schedule construction only; simulating N=7 is not needed here
    let h = tfim(7, 1.0);
    let s = logsweep_schedule(&h, 7, &LogSweepConfig::new(40, 0.3, 4.0).unwrap()).unwrap();
    assert_eq!(s.len(), 840);
}

#[test]
fn schedules_are_deterministic() {
    let h = tfim(4, 0.7);
    let cfg = LogSweepConfig::new(6, 0.4, 3.0).unwrap();
    let a = logsweep_schedule(&h, 4, &cfg).unwrap();
    let b = logsweep_schedule(&h.clone(), 4, &cfg.clone()).unwrap();
    for (x, y) in a.steps.iter().zip(&b.steps) {
        assert_eq!(x.eps.to_bits(), y.eps.to_bits());
        assert_eq!(x.gamma.to_bits(), y.gamma.to_bits());
        assert_eq!(x.time.to_bits(), y.time.to_bits());
    }
    assert_eq!(a, b);
    assert_eq!(bangbang_schedule(&h, 4, 2).unwrap(), bangbang_schedule(&h, 4, 2).unwrap());
}

#[test]
fn energy_band_examples() {
    let h = two_level(1.7);
    let (lo, hi) = default_energy_band(&h, &[CouplingDescriptor::new(PauliAxis::X, 0)], None).unwrap();
    assert!((lo - 1.7).abs() < 1e-12 && (hi - 1.7).abs() < 1e-12);

    let n = 3;
    let h = tfim(n, 0.2);
    let oracle = jacobi_eigenvalues(&real_part(h.matrix()));
    let (lo, hi) = default_energy_band(&h, &all_single_site_couplings(n), None).unwrap();
    assert!((lo - (oracle[1] - oracle[0])).abs() < 1e-9);
    assert!(hi >= lo);

    let flat = DenseOperator::identity(4).into_hermitian().unwrap();
    assert!(matches!(
        default_energy_band(&flat, &all_single_site_couplings(2), None),
        Err(Error::DegenerateSpectrum { .. })
    ));
}

#[test]
fn energy_band_skips_ferromagnetic_doublet() {
    let n = 4;
    let h = tfim(n, 20.0);
    let oracle = jacobi_eigenvalues(&real_part(h.matrix()));
    let (lo, _) = default_energy_band(&h, &all_single_site_couplings(n), None).unwrap();
    assert!(oracle[1] - oracle[0] < lo);
    assert!((lo - (oracle[2] - oracle[0])).abs() < 1e-9);
}

#[test]
fn empty_schedule_single_record() {
    let h = tfim(3, 1.0);
    let mut sim = StepSimulator::new(h).unwrap();
    let rho = DensityMatrix::maximally_mixed(8);
    let recs = run_protocol(&rho, &Schedule::custom(vec![]).unwrap(), &mut sim, &Default::default()).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].step, 0);
    assert!(recs[0].params.is_none());
    assert!((recs[0].entropy - 3.0).abs() < 1e-9);
}

#[test]
fn bangbang_1p1_trajectory() {
    let h = two_level(1.0);
    let s = bangbang_schedule(&h, 1, 1).unwrap();
    let mut sim = StepSimulator::new(h).unwrap();
    let recs = run_protocol(&DensityMatrix::basis(2, 1).unwrap(), &s, &mut sim, &Default::default()).unwrap();
    assert_eq!(recs.len(), 2);
    assert!(recs[0].fidelity < 1e-12);
    assert!((recs[1].fidelity - 1.0).abs() < 1e-9);
    assert!((recs[1].energy + 0.5).abs() < 1e-9);
    assert_eq!(recs[1].params, Some(s.steps[0]));
}

#[test]
fn ferromagnet_bangbang_reaches_steady_state() {
    let n = 5;
    let h = tfim(n, 2.0);
    let s = bangbang_schedule(&h, n, n).unwrap();
    let mut sim = StepSimulator::new(h).unwrap();
    // the J/B=2 doublet is split by ~0.04, above the default tolerance
    let obs = ObservablesConfig {
        degeneracy_tol: Some(0.1),
        ..Default::default()
    };
    assert_eq!(sim.spectrum().ground_manifold_size(0.1), 2);
    let mixed = DensityMatrix::maximally_mixed(1 << n);
    let ground = DensityMatrix::pure(&sim.spectrum().ground_state()).unwrap();
    let cooled = run_protocol(&mixed, &s, &mut sim, &obs).unwrap();
    let reheated = run_protocol(&ground, &s, &mut sim, &obs).unwrap();
    assert_eq!(cooled.len(), 26);
    assert!((cooled[0].fidelity - 2.0 / 32.0).abs() < 1e-9);
    let (fc, fr) = (cooled[25].fidelity, reheated[25].fidelity);
    assert!(fc > 2.0 / 32.0);
    assert!((fc - fr).abs() <= 0.05, "cooled {fc} vs reheated {fr}");
    for r in cooled.iter().chain(&reheated) {
        assert!((0.0..=1.0).contains(&r.fidelity));
        assert!((0.0..=n as f64).contains(&r.entropy));
    }
    for drop in entropy_drops(&cooled).chain(entropy_drops(&reheated)) {
        assert!(drop <= 1.0 + 1e-9);
    }
}

#[test]
fn record_thinning_keeps_last_step() {
    let n = 3;
    let h = tfim(n, 1.0);
    let s = bangbang_schedule(&h, n, 3).unwrap();
    let mut sim = StepSimulator::new(h).unwrap();
    let rho = DensityMatrix::maximally_mixed(8);
    let all = run_protocol(&rho, &s, &mut sim, &Default::default()).unwrap();
    let obs = ObservablesConfig {
        record_every: 4,
        ..Default::default()
    };
    let thin = run_protocol(&rho, &s, &mut sim, &obs).unwrap();
    let steps: Vec<_> = thin.iter().map(|r| r.step).collect();
    assert_eq!(steps, [0, 4, 8, 9]);
    for r in &thin {
        assert_eq!(r, &all[r.step]);
    }
    let bad = ObservablesConfig {
        record_every: 0,
        ..Default::default()
    };
    assert!(run_protocol(&rho, &s, &mut sim, &bad).is_err());
    assert!(run_protocol(&DensityMatrix::maximally_mixed(4), &s, &mut sim, &Default::default()).is_err());
}

#[test]
fn logsweep_1p1_regression_floor() {
    let cfg = LogSweepConfig::new(5, 1.0, 5.0).unwrap().with_axes(vec![PauliAxis::X]);
    let mut worst = f64::INFINITY;
    for i in 0..50 {
        let gap = 1.0 + 4.0 * (i as f64 + 0.5) / 50.0;
        let h = two_level(gap);
        let s = logsweep_schedule(&h, 1, &cfg).unwrap();
        assert_eq!(s.len(), 5);
        let mut sim = StepSimulator::new(h).unwrap();
        let rho = apply_schedule(&DensityMatrix::basis(2, 1).unwrap(), &s, &mut sim).unwrap();
        worst = worst.min(rho.population(0));
    }
    assert!(worst >= LOGSWEEP_1P1_FLOOR, "worst p_cool {worst}");
}

#[test]
fn logsweep_improves_critical_fidelity() {
    let n = 4;
    let h = tfim(n, 1.0);
    let (lo, hi) = default_energy_band(&h, &all_single_site_couplings(n), None).unwrap();
    let mut sim = StepSimulator::new(h.clone()).unwrap();
    let rho = DensityMatrix::maximally_mixed(1 << n);
    let infidelity = |k, sim: &mut StepSimulator| {
        let s = logsweep_schedule(&h, n, &LogSweepConfig::new(k, lo, hi).unwrap()).unwrap();
        1.0 - run_protocol(&rho, &s, sim, &Default::default()).unwrap().last().unwrap().fidelity
    };
    let (a, b) = (infidelity(3, &mut sim), infidelity(12, &mut sim));
    assert!(b < a, "K=3: {a}, K=12: {b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn entropy_ledger_holds(seed in any::<u64>(), k in 2usize..5) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, 8);
        let rho = random_density(&mut r, 8);
        let (lo, hi) = default_energy_band(&h, &all_single_site_couplings(3), None).unwrap();
        prop_assume!(hi > lo * 1.01);
        let mut steps = logsweep_schedule(&h, 3, &LogSweepConfig::new(k, lo, hi).unwrap()).unwrap().steps;
        steps.extend(bangbang_schedule(&h, 3, 1).unwrap().steps);
        let mut sim = StepSimulator::new(h).unwrap();
        let recs = run_protocol(&rho, &Schedule::custom(steps).unwrap(), &mut sim, &Default::default()).unwrap();
        for drop in entropy_drops(&recs) {
            prop_assert!(drop <= 1.0 + 1e-9, "entropy drop {}", drop);
        }
        for rec in &recs {
            prop_assert!((0.0..=1.0).contains(&rec.fidelity));
            prop_assert!(rec.entropy >= 0.0 && rec.entropy <= 3.0 + 1e-12);
        }
    }
}
