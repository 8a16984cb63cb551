//! Deterministic Central Force Optimization and Variable-Z0 antenna tooling.
//!
//! The crate is organised by concern:
//!
//! - [`cfo`]: the parameter-free CFO engine and the (γ × Np/Nd) sweep driver.
//! - [`benchmarks`]: the classical objective catalog, exposed as maximization problems.
//! - [`quasirandom`]: Van der Corput radical inverse and a prime sieve.
//! - [`antenna`]: VSWR relative to an arbitrary Z0, band extraction and fitness functions.
//! - [`nec`]: NEC card-deck generation, output-listing parsing and an external engine client.
//! - [`report`]: run configuration, run records and plot-data emission.
//!
//! Everything except [`nec::run_engine`] is pure and deterministic.

pub mod antenna;
pub mod benchmarks;
pub mod cfo;
pub mod error;
pub mod nec;
pub mod quasirandom;
pub mod report;

pub use error::{Error, Result};
