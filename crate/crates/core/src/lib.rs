//! Short rate-compatible linear codes over Z2 and Z4 for M-PSK, built
//! greedily, analyzed exactly, and simulated under coherent and
//! non-coherent maximum-likelihood detection.
//!
//! The crate covers the full workflow for physical-layer-header style
//! codes:
//!
//! - [`greedy`]: column-by-column construction of rate-compatible families,
//!   plain, rotationally invariant, or with the two fixed binary rows used
//!   for non-coherent QPSK; multi-run best-of selection.
//! - [`matrix`] / [`spectrum`]: exact encoding, exhaustive weight spectra,
//!   minimum distances, rotational-invariance checks and non-coherent
//!   equivalent distances.
//! - [`bounds`]: pairwise error bounds, coherent/non-coherent union bounds,
//!   the conservative erfc bound and its inversion to a required minimum
//!   distance.
//! - [`sim`]: reproducible Monte Carlo frame-error-rate estimation over
//!   AWGN with unknown constant phase.
//! - [`hexfmt`] / [`persist`]: the bit-exact hex matrix text format and
//!   JSON family persistence.

pub mod bounds;
pub mod constellation;
pub mod erfc;
mod error;
pub mod greedy;
pub mod hexfmt;
pub mod matrix;
pub mod persist;
pub mod ring;
pub mod rng;
pub mod sim;
pub mod spectrum;
pub mod word;

pub use error::{Error, Result};
pub use greedy::{
    derive_nc_code, greedy_construct, multi_run_best, BuildConfig, BuildStatus, CodeFamily,
    Constraint, Milestone, MultiRunBest,
};
pub use matrix::{Codeword, GeneratorMatrix};
pub use ring::Ring;
pub use spectrum::{NcDistanceReport, WeightSpectrum};
pub use word::InfoWord;
