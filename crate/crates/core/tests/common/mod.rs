#![allow(dead_code)]

use aif::dataset::Dataset;
use aif::generators::{
    coin_flip_dataset, dyadic_dataset, dyadic_target_dataset, markov_simulate, prng_dataset, prng_truncated,
    MarkovChainSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn absorbing_chain() -> MarkovChainSpec {
    MarkovChainSpec::from_json(include_str!("../data/absorbing3.json")).unwrap()
}

pub fn irreducible_chain() -> MarkovChainSpec {
    MarkovChainSpec::from_json(include_str!("../data/irreducible4.json")).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// One dataset per generator family, at a few splits.
pub fn corpus() -> Vec<(String, Dataset)> {
    let mut out = Vec::new();
    for split in [10, 500] {
        out.push((format!("prng/{split}"), prng_dataset(0.0, 1000, split).unwrap()));
        let t = prng_truncated(0.25, 1000, 16, 8, 3, split).unwrap();
        out.push((format!("prng_truncated/{split}"), t.dataset));
        out.push((format!("coin/{split}"), coin_flip_dataset(1000, 9, split).unwrap()));
    }
    for seed in 0..3 {
        let a = markov_simulate(&absorbing_chain(), 200, seed).unwrap();
        out.push((format!("markov_absorbing/{seed}"), a.dataset));
        let i = markov_simulate(&irreducible_chain(), 200, seed).unwrap();
        out.push((format!("markov_irreducible/{seed}"), i.dataset));
    }
    for omega in [q(11, 32), q(1, 3), q(1, 1)] {
        out.push((format!("dyadic/{omega}"), dyadic_dataset(&omega, 40).unwrap()));
        out.push((format!("dyadic_target/{omega}"), dyadic_target_dataset(&omega, 40).unwrap()));
    }
    out
}
