//! Deterministic generators for the worked example processes.

mod champernowne;
mod dyadic;
mod markov;
mod prng;

pub use champernowne::{champernowne, champernowne_len};
pub use dyadic::{dyadic_dataset, dyadic_digits, dyadic_target_dataset, DyadicExpansion};
pub use markov::{markov_simulate, ChainKind, MarkovChainSpec, MarkovTrajectory, StateSet};
pub use prng::{
    coin_flip_dataset, prng_dataset, prng_sequence, prng_step, prng_truncated, truncate_fraction,
    TruncatedPrng,
};

use thiserror::Error;

use crate::dataset::DatasetError;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("PRNG input {0} is outside [0, 1)")]
    OutOfRange(f64),
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("invalid precision bounds: need 1 <= s_min ({s_min}) <= s ({s}) <= 52")]
    InvalidPrecision { s: u32, s_min: u32 },
    #[error("invalid Markov chain: {0}")]
    InvalidChain(String),
    #[error("omega must be a rational in (0, 1], got {0}")]
    OmegaOutOfRange(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}
