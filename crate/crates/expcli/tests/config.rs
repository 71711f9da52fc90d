use qdcool::models::PauliAxis;
use qdcool::protocols::LoopOrder;
use qdcool_exp::config::{EvolutionMode, PHASE_PRESETS};
use qdcool_exp::{ExpError, ExperimentConfig, ExperimentId};

fn field_of(err: ExpError) -> String {
    match err {
        ExpError::Config { field, .. } => field,
        other => panic!("expected a validation error, got {other}"),
    }
}

#[test]
fn defaults_are_valid() {
    let cfg = ExperimentConfig::default();
    for id in ExperimentId::ALL {
        cfg.validate(id).unwrap_or_else(|e| panic!("{id}: {e}"));
    }
    assert_eq!(cfg.energy_sweep.n, 8);
    assert_eq!(cfg.energy_sweep.eps_points, 60);
    assert_eq!(cfg.energy_sweep.j_over_b, PHASE_PRESETS);
    assert_eq!(cfg.sphere_scan.points, 400);
    assert_eq!(cfg.logsweep_tfim.k_values, [5, 10, 20, 40]);
}

#[test]
fn experiment_ids_round_trip() {
    for id in ExperimentId::ALL {
        assert_eq!(id.name().parse::<ExperimentId>().unwrap(), id);
    }
    assert!("fig-9".parse::<ExperimentId>().is_err());
}

#[test]
fn sections_parse() {
    let cfg = ExperimentConfig::from_toml_str(
        r#"
        degeneracy_tol = 0.05
        out = "somewhere"

        [trotter-curves]
        m_values = [1, 3]
        t_points = 10

        [sphere-scan]
        sequences = ["XY"]
        evolution = "trotter"
        sampling = "random"
        seed = 7

        [energy-sweep]
        n = 4
        coupling = { axis = "Z", site = 1 }

        [logsweep-1p1]
        k = 3
        axes = ["X", "Y"]

        [logsweep-tfim]
        loop_order = "site-outer"
        "#,
    )
    .unwrap();
    assert_eq!(cfg.degeneracy_tol, Some(0.05));
    assert_eq!(cfg.out.as_deref(), Some(std::path::Path::new("somewhere")));
    assert_eq!(cfg.trotter_curves.m_values, [1, 3]);
    assert_eq!(cfg.trotter_curves.gamma, 0.1);
    assert_eq!(cfg.trotter_curves.t_grid().len(), 10);
    assert_eq!(cfg.sphere_scan.evolution, EvolutionMode::Trotter);
    assert_eq!(cfg.sphere_scan.parsed_sequences().unwrap(), [vec![PauliAxis::X, PauliAxis::Y]]);
    assert_eq!(cfg.energy_sweep.coupling.axis, PauliAxis::Z);
    assert_eq!(cfg.logsweep_1p1.k, 3);
    assert_eq!(cfg.logsweep_tfim.loop_order, LoopOrder::SiteOuter);
    for id in ExperimentId::ALL {
        cfg.validate(id).unwrap();
    }
}

#[test]
fn unknown_keys_are_rejected() {
    assert!(ExperimentConfig::from_toml_str("gradation = 3").is_err());
    assert!(ExperimentConfig::from_toml_str("[logsweep-1p1]\nK = 3").is_err());
    assert!(ExperimentConfig::from_toml_str("[fig-9]\nx = 1").is_err());
    assert!(ExperimentConfig::from_toml_str("[sphere-scan]\nsampling = \"grid\"").is_err());
}

#[test]
fn validation_names_the_field() {
    let cfg = ExperimentConfig::from_toml_str("[logsweep-1p1]\nk = 1").unwrap();
    assert_eq!(field_of(cfg.validate(ExperimentId::Logsweep1p1).unwrap_err()), "logsweep-1p1.k");
    // other experiments do not look at that section
    cfg.validate(ExperimentId::TrotterCurves).unwrap();

    let cases = [
        ("[logsweep-tfim]\nk_values = [5, 1]", ExperimentId::LogsweepTfim, "logsweep-tfim.k_values"),
        ("[logsweep-tfim]\nn = 12", ExperimentId::LogsweepTfim, "logsweep-tfim.n"),
        ("[trotter-curves]\nm_values = [0]", ExperimentId::TrotterCurves, "trotter-curves.m_values"),
        ("[trotter-curves]\ngamma = -1.0", ExperimentId::TrotterCurves, "trotter-curves.gamma"),
        ("[detuning-curves]\ndelta_min = -2.0", ExperimentId::DetuningCurves, "detuning-curves.delta_min"),
        ("[sphere-scan]\nsequences = [\"XQ\"]", ExperimentId::SphereScan, "sphere-scan.sequences"),
        ("[sphere-scan]\npoints = 0", ExperimentId::SphereScan, "sphere-scan.points"),
        ("[energy-sweep]\nn = 2", ExperimentId::EnergySweep, "energy-sweep.coupling"),
        ("[energy-sweep]\neps_max = 0.01", ExperimentId::EnergySweep, "energy-sweep.eps_max"),
        ("[bangbang-tfim]\nj_over_b = []", ExperimentId::BangbangTfim, "bangbang-tfim.j_over_b"),
        ("[bangbang-tfim]\nrepetitions = 0", ExperimentId::BangbangTfim, "bangbang-tfim.repetitions"),
        ("degeneracy_tol = 0.0", ExperimentId::SphereScan, "degeneracy_tol"),
    ];
    for (text, id, field) in cases {
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        assert_eq!(field_of(cfg.validate(id).unwrap_err()), field, "{text}");
    }
}

#[test]
fn echo_contains_the_section() {
    let cfg = ExperimentConfig::default();
    let echo = cfg.echo(ExperimentId::Logsweep1p1);
    assert_eq!(echo["experiment"], "logsweep-1p1");
    assert_eq!(echo["logsweep-1p1"]["k"], 5);
    assert!(echo.get("trotter-curves").is_none());
}
