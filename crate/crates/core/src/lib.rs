//! Jensen-Shannon divergence and the metric family it generates.
//!
//! The crate covers four connected areas:
//!
//! - **Divergences** ([`divergence`], [`dist`], [`generator`]): discrete
//!   distributions, Shannon entropy, Kullback-Leibler, the generic Csiszár
//!   f-divergence, and the (weighted) Jensen-Shannon divergence, all in bits.
//! - **Metric analysis** ([`metric`]): the family d_α = JSD^α, classification
//!   of exponents, the h_α ratio whose nonincrease certifies the triangle
//!   inequality, grid scans, counterexample search, and figure-data emitters.
//! - **Sequence segmentation** ([`seq`], [`ensemble`]): the sliding-cursor
//!   statistic d'_α over symbolic sequences, chi-square significance via the
//!   regularized incomplete gamma ([`special`]), recursive segmentation, and
//!   reproducible Monte Carlo ensembles.
//! - **Quantum extension** ([`quantum`]): density matrices, POVM outcome
//!   distributions, and maximization of the classical JSD over projective
//!   qubit measurements.
//!
//! Everything is a pure function of its inputs; values are immutable after
//! construction and safe to share across threads. Randomized operations take
//! explicit seeds and are reproducible bit-for-bit.

pub mod dist;
pub mod divergence;
pub mod ensemble;
pub mod error;
pub mod generator;
pub mod metric;
pub mod quantum;
pub mod report;
pub mod seq;
pub mod special;

pub use dist::{ProbDist, WeightPair};
pub use divergence::{d_alpha, f_divergence, jsd, jsd_weighted, kl_divergence, shannon_entropy};
pub use error::{Error, Result};
pub use generator::FGenerator;
pub use metric::{classify_alpha, AlphaExponent, Classification};
