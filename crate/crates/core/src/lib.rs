//! Automated design of genetic algorithms on pseudo-Boolean benchmarks.
//!
//! The crate is organized bottom-up:
//!
//! * [`rng`] and [`bitstring`]: reproducible random streams and binary genotypes.
//! * [`wmodel`]: the W-model problem generator and its 19-instance benchmark suite.
//! * [`operators`]: every selection, crossover, mutation and replacement option of the
//!   configurable GA, plus the [`Configuration`] design space.
//! * [`fastga`]: the (mu+lambda) engine assembling operators into a running algorithm.
//! * [`anytime`]: the bucketed 2D ECDF logger and its AUC statistic.
//! * [`racing`]: an iterated-racing configurator maximizing AUC on one instance.

pub mod anytime;
pub mod bitstring;
mod error;
pub mod fastga;
pub mod operators;
pub mod racing;
pub mod rng;
pub mod wmodel;

pub use anytime::AttainmentHistogram;
pub use bitstring::BitString;
pub use error::{Error, Result};
pub use fastga::{Baseline, GaParams, RunResult};
pub use operators::{Configuration, Individual, Population};
pub use rng::RngStream;
pub use wmodel::WModelInstance;
