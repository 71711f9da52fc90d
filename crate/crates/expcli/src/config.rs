//! TOML experiment configuration. Every experiment has its own section named
//! after its subcommand; omitted keys take the defaults below and unknown
//! keys are rejected.
//!
//! ```toml
//! degeneracy_tol = 1e-3
//!
//! [logsweep-tfim]
//! j_over_b = [0.2, 1.0, 5.0]
//! k_values = [5, 10, 20, 40]
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qdcool::models::{CouplingDescriptor, PauliAxis};
use qdcool::protocols::LoopOrder;
use serde::{Deserialize, Serialize};

use crate::error::{ExpError, Result};

/// `J/B` of the paramagnetic, critical and ferromagnetic presets.
pub const PHASE_PRESETS: [f64; 3] = [0.2, 1.0, 5.0];

/// Largest register simulated by default; the full space then has dimension 512.
pub const MAX_QUBITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentId {
    TrotterCurves,
    DetuningCurves,
    SphereScan,
    EnergySweep,
    BangbangTfim,
    Logsweep1p1,
    LogsweepTfim,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 7] = [
        Self::TrotterCurves,
        Self::DetuningCurves,
        Self::SphereScan,
        Self::EnergySweep,
        Self::BangbangTfim,
        Self::Logsweep1p1,
        Self::LogsweepTfim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::TrotterCurves => "trotter-curves",
            Self::DetuningCurves => "detuning-curves",
            Self::SphereScan => "sphere-scan",
            Self::EnergySweep => "energy-sweep",
            Self::BangbangTfim => "bangbang-tfim",
            Self::Logsweep1p1 => "logsweep-1p1",
            Self::LogsweepTfim => "logsweep-tfim",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = ExpError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ExpError::config("experiment", format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionMode {
    #[default]
    Exact,
    /// Trotterized with the weak-coupling Trotter number.
    Trotter,
}

/// Step used by the energy sweep; both use `gamma = 2 eps`, `t = pi/gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepStep {
    /// Single Trotter step (`M = 1`).
    #[default]
    Bangbang,
    /// Continuous-time evolution with the same parameters. Conserves the
    /// total energy, so `|dE| <= 2 eps`.
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereSampling {
    #[default]
    Fibonacci,
    /// Uniform random directions from a seeded generator.
    Random,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    /// Ground-manifold tolerance; unset means `1e-3` of the spectral range.
    #[serde(rename = "degeneracy_tol", skip_serializing_if = "Option::is_none")]
    pub degeneracy_tol: Option<f64>,
    /// Output directory, overridden by `--out`.
    #[serde(rename = "out", skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub trotter_curves: TrotterCurvesConfig,
    pub detuning_curves: DetuningCurvesConfig,
    pub sphere_scan: SphereScanConfig,
    pub energy_sweep: EnergySweepConfig,
    pub bangbang_tfim: BangbangTfimConfig,
    #[serde(rename = "logsweep-1p1")]
    pub logsweep_1p1: Logsweep1p1Config,
    pub logsweep_tfim: LogsweepTfimConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrotterCurvesConfig {
    /// Fridge energy, equal to the system gap (resonance).
    pub eps: f64,
    pub gamma: f64,
    pub m_values: Vec<u32>,
    /// End of the time grid; unset means `2 pi / gamma`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Grid points `t_k = k t_max / t_points`, `k = 1..=t_points`.
    pub t_points: usize,
}

impl Default for TrotterCurvesConfig {
    fn default() -> Self {
        Self {
            eps: 1.0,
            gamma: 0.1,
            m_values: vec![2, 4, 8],
            t_max: None,
            t_points: 400,
        }
    }
}

impl TrotterCurvesConfig {
    pub fn t_grid(&self) -> Vec<f64> {
        let t_max = self.t_max.unwrap_or(2.0 * PI / self.gamma);
        (1..=self.t_points).map(|k| k as f64 * t_max / self.t_points as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetuningCurvesConfig {
    pub eps: f64,
    /// Detuning `delta = Delta - eps`, linear grid.
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_points: usize,
    pub bangbang: bool,
    /// Weak-coupling strengths; empty disables the weak-coupling curves.
    pub weak_gammas: Vec<f64>,
    pub weak_evolution: EvolutionMode,
}

impl Default for DetuningCurvesConfig {
    fn default() -> Self {
        Self {
            eps: 1.0,
            delta_min: -0.8,
            delta_max: 0.8,
            delta_points: 161,
            bangbang: true,
            weak_gammas: vec![0.2, 0.1, 0.05],
            weak_evolution: EvolutionMode::Exact,
        }
    }
}

impl DetuningCurvesConfig {
    pub fn delta_grid(&self) -> Vec<f64> {
        linspace(self.delta_min, self.delta_max, self.delta_points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SphereScanConfig {
    /// Field strength; the gap is `2 h` and the fridge is tuned to it.
    pub h: f64,
    /// Product of coupling time and fridge energy.
    pub t_eps: f64,
    pub points: usize,
    /// Coupling sequences such as `"XYZ"`, one step per letter.
    pub sequences: Vec<String>,
    pub evolution: EvolutionMode,
    pub sampling: SphereSampling,
    pub seed: u64,
}

impl Default for SphereScanConfig {
    fn default() -> Self {
        Self {
            h: 1.0,
            t_eps: 10.0,
            points: 400,
            sequences: vec!["XXX".into(), "XYX".into(), "XYZ".into()],
            evolution: EvolutionMode::Exact,
            sampling: SphereSampling::Fibonacci,
            seed: 0,
        }
    }
}

impl SphereScanConfig {
    pub fn parsed_sequences(&self) -> Result<Vec<Vec<PauliAxis>>> {
        self.sequences
            .iter()
            .map(|s| {
                s.chars()
                    .map(|c| {
                        PauliAxis::from_char(c).ok_or_else(|| {
                            ExpError::config("sphere-scan.sequences", format!("bad axis {c:?} in {s:?}"))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnergySweepConfig {
    pub n: usize,
    pub j_over_b: Vec<f64>,
    pub coupling: CouplingDescriptor,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_points: usize,
    pub step: SweepStep,
}

impl Default for EnergySweepConfig {
    fn default() -> Self {
        Self {
            n: 8,
            j_over_b: PHASE_PRESETS.to_vec(),
            // Y on the third qubit
            coupling: CouplingDescriptor::new(PauliAxis::Y, 2),
            eps_min: 0.1,
            eps_max: 6.0,
            eps_points: 60,
            step: SweepStep::Bangbang,
        }
    }
}

impl EnergySweepConfig {
    pub fn eps_grid(&self) -> Vec<f64> {
        linspace(self.eps_min, self.eps_max, self.eps_points)
    }

    pub fn grid_cell(&self) -> f64 {
        (self.eps_max - self.eps_min) / (self.eps_points - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BangbangTfimConfig {
    pub n_values: Vec<usize>,
    pub j_over_b: Vec<f64>,
    /// Passes over the chain; unset means `R = N`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetitions: Option<usize>,
}

impl Default for BangbangTfimConfig {
    fn default() -> Self {
        Self {
            n_values: (2..=MAX_QUBITS).collect(),
            j_over_b: PHASE_PRESETS.to_vec(),
            repetitions: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Logsweep1p1Config {
    pub k: usize,
    pub e_min: f64,
    pub e_max: f64,
    /// Midpoint grid of unknown gaps inside `(e_min, e_max)`.
    pub gap_points: usize,
    pub linewidth_factor: f64,
    pub axes: Vec<PauliAxis>,
}

impl Default for Logsweep1p1Config {
    fn default() -> Self {
        Self {
            k: 5,
            e_min: 1.0,
            e_max: 5.0,
            gap_points: 50,
            linewidth_factor: PI,
            axes: vec![PauliAxis::X],
        }
    }
}

impl Logsweep1p1Config {
    pub fn gap_grid(&self) -> Vec<f64> {
        let w = (self.e_max - self.e_min) / self.gap_points as f64;
        (0..self.gap_points).map(|i| self.e_min + w * (i as f64 + 0.5)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LogsweepTfimConfig {
    pub j_over_b: Vec<f64>,
    /// System size of the `K` sweep.
    pub n: usize,
    pub k_values: Vec<usize>,
    /// Gradation number of the `N` sweep.
    pub k: usize,
    pub n_values: Vec<usize>,
    pub linewidth_factor: f64,
    pub loop_order: LoopOrder,
}

impl Default for LogsweepTfimConfig {
    fn default() -> Self {
        Self {
            j_over_b: PHASE_PRESETS.to_vec(),
            n: 5,
            k_values: vec![5, 10, 20, 40],
            k: 10,
            n_values: vec![3, 4, 5, 6],
            linewidth_factor: PI,
            loop_order: LoopOrder::EnergyOuter,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ExpError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// The section of one experiment plus the shared keys, for metadata.
    pub fn echo(&self, id: ExperimentId) -> serde_json::Value {
        let section = match id {
            ExperimentId::TrotterCurves => serde_json::to_value(&self.trotter_curves),
            ExperimentId::DetuningCurves => serde_json::to_value(&self.detuning_curves),
            ExperimentId::SphereScan => serde_json::to_value(&self.sphere_scan),
            ExperimentId::EnergySweep => serde_json::to_value(&self.energy_sweep),
            ExperimentId::BangbangTfim => serde_json::to_value(&self.bangbang_tfim),
            ExperimentId::Logsweep1p1 => serde_json::to_value(&self.logsweep_1p1),
            ExperimentId::LogsweepTfim => serde_json::to_value(&self.logsweep_tfim),
        }
        .expect("config sections serialize");
        serde_json::json!({
            "experiment": id.name(),
            "degeneracy_tol": self.degeneracy_tol,
            id.name(): section,
        })
    }

    /// Checks the shared keys and the section of `id`. Errors name the
    /// offending field as `section.key`.
    pub fn validate(&self, id: ExperimentId) -> Result<()> {
        if let Some(tol) = self.degeneracy_tol {
            positive("degeneracy_tol", tol)?;
        }
        let s = id.name();
        let f = |key: &str| format!("{s}.{key}");
        match id {
            ExperimentId::TrotterCurves => {
                let c = &self.trotter_curves;
                positive(&f("eps"), c.eps)?;
                positive(&f("gamma"), c.gamma)?;
                non_empty(&f("m_values"), &c.m_values)?;
                if c.m_values.contains(&0) {
                    return Err(ExpError::config(f("m_values"), "Trotter numbers must be >= 1"));
                }
                if let Some(t) = c.t_max {
                    positive(&f("t_max"), t)?;
                }
                at_least(&f("t_points"), c.t_points, 1)?;
            }
            ExperimentId::DetuningCurves => {
                let c = &self.detuning_curves;
                positive(&f("eps"), c.eps)?;
                at_least(&f("delta_points"), c.delta_points, 2)?;
                if !(c.delta_min < c.delta_max) {
                    return Err(ExpError::config(f("delta_max"), "must exceed delta_min"));
                }
                if !(c.eps + c.delta_min > 0.0) {
                    return Err(ExpError::config(f("delta_min"), "eps + delta_min must be > 0 (the system gap)"));
                }
                for &g in &c.weak_gammas {
                    positive(&f("weak_gammas"), g)?;
                }
                if !c.bangbang && c.weak_gammas.is_empty() {
                    return Err(ExpError::config(f("weak_gammas"), "no curves selected"));
                }
            }
            ExperimentId::SphereScan => {
                let c = &self.sphere_scan;
                positive(&f("h"), c.h)?;
                positive(&f("t_eps"), c.t_eps)?;
                at_least(&f("points"), c.points, 1)?;
                non_empty(&f("sequences"), &c.sequences)?;
                for seq in c.parsed_sequences()? {
                    if seq.is_empty() {
                        return Err(ExpError::config(f("sequences"), "empty coupling sequence"));
                    }
                }
            }
            ExperimentId::EnergySweep => {
                let c = &self.energy_sweep;
                qubits(&f("n"), c.n, 1)?;
                ratios(&f("j_over_b"), &c.j_over_b)?;
                if c.coupling.site >= c.n {
                    return Err(ExpError::config(f("coupling"), format!("site {} outside a chain of {}", c.coupling.site, c.n)));
                }
                positive(&f("eps_min"), c.eps_min)?;
                if !(c.eps_max > c.eps_min) {
                    return Err(ExpError::config(f("eps_max"), "must exceed eps_min"));
                }
                at_least(&f("eps_points"), c.eps_points, 2)?;
            }
            ExperimentId::BangbangTfim => {
                let c = &self.bangbang_tfim;
                non_empty(&f("n_values"), &c.n_values)?;
                for &n in &c.n_values {
                    qubits(&f("n_values"), n, 2)?;
                }
                ratios(&f("j_over_b"), &c.j_over_b)?;
                if let Some(r) = c.repetitions {
                    at_least(&f("repetitions"), r, 1)?;
                }
            }
            ExperimentId::Logsweep1p1 => {
                let c = &self.logsweep_1p1;
                at_least(&f("k"), c.k, 2)?;
                positive(&f("e_min"), c.e_min)?;
                if !(c.e_max > c.e_min) {
                    return Err(ExpError::config(f("e_max"), "must exceed e_min"));
                }
                at_least(&f("gap_points"), c.gap_points, 1)?;
                positive(&f("linewidth_factor"), c.linewidth_factor)?;
                non_empty(&f("axes"), &c.axes)?;
            }
            ExperimentId::LogsweepTfim => {
                let c = &self.logsweep_tfim;
                ratios(&f("j_over_b"), &c.j_over_b)?;
                qubits(&f("n"), c.n, 2)?;
                non_empty(&f("k_values"), &c.k_values)?;
                for &k in &c.k_values {
                    at_least(&f("k_values"), k, 2)?;
                }
                at_least(&f("k"), c.k, 2)?;
                for &n in &c.n_values {
                    qubits(&f("n_values"), n, 2)?;
                }
                positive(&f("linewidth_factor"), c.linewidth_factor)?;
            }
        }
        Ok(())
    }
}

/// `points` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![a],
        _ => (0..points)
            .map(|i| a + (b - a) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

fn positive(field: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ExpError::config(field, format!("must be a positive number, got {x}")))
    }
}

fn at_least(field: &str, x: usize, min: usize) -> Result<()> {
    if x >= min {
        Ok(())
    } else {
        Err(ExpError::config(field, format!("must be >= {min}, got {x}")))
    }
}

fn non_empty<T>(field: &str, v: &[T]) -> Result<()> {
    if v.is_empty() {
        Err(ExpError::config(field, "must not be empty"))
    } else {
        Ok(())
    }
}

fn qubits(field: &str, n: usize, min: usize) -> Result<()> {
    if (min..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(ExpError::config(field, format!("system size must be in {min}..={MAX_QUBITS}, got {n}")))
    }
}

fn ratios(field: &str, v: &[f64]) -> Result<()> {
    non_empty(field, v)?;
    match v.iter().find(|r| !(**r >= 0.0 && r.is_finite())) {
        Some(r) => Err(ExpError::config(field, format!("J/B must be >= 0, got {r}"))),
        None => Ok(()),
    }
}
