mod common;

use aif::dataset::Value;
use aif::forecast::{find_minimal_n, Lookup, MinimalN, PrecisionSpec};
use aif::generators::{champernowne, champernowne_len, dyadic_digits, markov_simulate};
use aif::rng::SplitMix64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use common::{absorbing_chain, irreducible_chain, q};

#[test]
fn champernowne_listing() {
    let s = champernowne(20).to_string();
    assert_eq!(s, "011011100101110111100010011010101111001101111011111000010001100101001110100");
    assert_eq!(s.len(), 75);
    assert_eq!(champernowne_len(20), 75);
}

#[test]
fn absorbing_chain_minimal_split_never_exceeds_absorption() {
    let spec = absorbing_chain();
    for seed in 0..50 {
        let t = markov_simulate(&spec, 400, seed).unwrap();
        let a = t.absorption_time.expect("absorbed");
        let got = find_minimal_n(&t.dataset, &mut Lookup::default(), &PrecisionSpec::exact(), 400).unwrap();
        let MinimalN::Found { n } = got else { panic!("seed {seed}: {got:?}") };
        assert!(n <= a, "seed {seed}: N* = {n} > a = {a}");
        let ya = &t.dataset.records()[a - 1].y;
        assert!(t.dataset.records()[a..].iter().all(|r| &r.y == ya));
    }
}

#[test]
fn irreducible_chain_minimal_split_is_the_coverage_time() {
    let spec = irreducible_chain();
    for seed in 0..50 {
        let t = markov_simulate(&spec, 2000, seed).unwrap();
        let c = t.coverage_time.expect("covered");
        let got = find_minimal_n(&t.dataset, &mut Lookup::default(), &PrecisionSpec::exact(), 2000).unwrap();
        assert_eq!(got, MinimalN::Found { n: c }, "seed {seed}");
    }
}

#[test]
fn horizon_shorter_than_coverage_is_not_found() {
    let t = markov_simulate(&irreducible_chain(), 2000, 1).unwrap();
    let c = t.coverage_time.unwrap();
    let got = find_minimal_n(&t.dataset, &mut Lookup::default(), &PrecisionSpec::exact(), c - 1).unwrap();
    assert_eq!(got, MinimalN::NotFound { horizon: c - 1 });
}

/// `y_n < omega <= y_n + 2^-n` for every n.
fn check_bracketing(omega: &BigRational, n: usize) {
    let exp = dyadic_digits(omega, n).unwrap();
    let mut width = BigRational::one();
    for (i, y) in exp.partial_sums.iter().enumerate() {
        width /= BigRational::from_integer(2.into());
        assert!(y < omega, "omega {omega}, n {}: y = {y}", i + 1);
        assert!(omega <= &(y + &width), "omega {omega}, n {}: y = {y}", i + 1);
    }
}

#[test]
fn dyadic_partial_sums_bracket_omega() {
    for omega in [q(1, 2), q(1, 4), q(3, 4), q(1, 1)] {
        check_bracketing(&omega, 64);
    }
    let mut rng = SplitMix64::new(8);
    for _ in 0..1000 {
        let d = rng.next_in_range(1, u64::MAX >> 1);
        let n = rng.next_in_range(1, d);
        check_bracketing(&BigRational::new(n.into(), d.into()), 64);
    }
}

#[test]
fn dyadic_boundary_expansions_do_not_terminate() {
    for omega in [q(1, 2), q(1, 4), q(3, 4), q(1, 1)] {
        let exp = dyadic_digits(&omega, 64).unwrap();
        // After the leading digits every remaining digit is 1.
        assert!(exp.digits[2..].iter().all(|&d| d), "{omega}");
        let gap = &omega - exp.partial_sums.last().unwrap();
        assert!(gap > BigRational::zero());
    }
}

#[test]
fn dyadic_inputs_grow_one_digit_per_record() {
    let ds = aif::generators::dyadic_dataset(&q(5, 7), 30).unwrap();
    for (m, r) in ds.records().iter().enumerate() {
        let Value::Bits(x) = &r.x else { panic!() };
        assert_eq!(x.len(), m + 1);
    }
}
