//! Algorithmic information forecastability.
//!
//! Self-delimiting integer codes ([`selfdelim`]), compression-based upper
//! bounds on Kolmogorov complexity ([`complexity`]), generators for the example
//! processes ([`generators`]) and OF/PF/PrF verdicts for a predictor on a
//! paired dataset ([`forecast`]). The `aif` binary exposes all of them.

pub mod bits;
pub mod cli;
pub mod complexity;
pub mod dataset;
pub mod forecast;
pub mod generators;
pub mod rng;
pub mod selfdelim;

pub use bits::BitString;
pub use dataset::{Dataset, Record, Value, ValueKind};
