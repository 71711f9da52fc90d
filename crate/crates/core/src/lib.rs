//! Ground-state preparation of small qubit Hamiltonians by repeatedly
//! coupling them to a single "fridge" qubit that is reset after every step.
//!
//! * [`qcore`]: dense operators, density matrices, eigendecomposition and the
//!   append / evolve / trace-out channel primitives.
//! * [`models`]: system Hamiltonians (two-level, random axis, transverse-field
//!   Ising chain) and the coupled system + fridge Hamiltonian.
//! * [`cooling`]: one cooling step, exact or Trotterized, plus the closed-form
//!   parameter rules of the 1+1 model.
//! * [`protocols`]: BangBang and LogSweep schedules and their executor.

pub mod cooling;
pub mod error;
pub mod models;
pub mod protocols;
pub mod qcore;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
