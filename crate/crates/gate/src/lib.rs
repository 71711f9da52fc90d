//! Acceptance gate. The checks live in `tests/acceptance.rs` and print one
//! PASS/FAIL line per criterion:
//!
//! ```text
//! cargo test -p qdcool-gate --test acceptance
//! ```
//!
//! The package sorts after the others, so a red gate never hides their tests
//! in a workspace run.
