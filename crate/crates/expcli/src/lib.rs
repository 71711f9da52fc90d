//! Configuration-driven experiments on top of `qdcool`: each experiment
//! sweeps a parameter grid and emits CSV tables with JSON metadata.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod table;

pub use cli::run_cli;
pub use config::{ExperimentConfig, ExperimentId};
pub use error::{ExpError, Result};
pub use experiments::run_experiment;
pub use table::{read_table, write_table, Cell, Column, ResultTable};
