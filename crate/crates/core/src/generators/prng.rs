use std::f64::consts::PI;

use serde_json::json;

use super::GeneratorError;
use crate::bits::BitString;
use crate::dataset::{Dataset, Record, Value};
use crate::rng::SplitMix64;

/// `frac((x + π)^5)` in the fixed order `t = x + π; t2 = t·t; t4 = t2·t2;
/// t5 = t4·t; t5 - floor(t5)`, so the binary64 stream is reproducible
/// anywhere IEEE 754 arithmetic is.
pub fn prng_step(x: f64) -> Result<f64, GeneratorError> {
    if !(0.0..1.0).contains(&x) {
        return Err(GeneratorError::OutOfRange(x));
    }
    Ok(step_unchecked(x))
}

#[inline]
pub(crate) fn step_unchecked(x: f64) -> f64 {
    let t = x + PI;
    let t2 = t * t;
    let t4 = t2 * t2;
    let t5 = t4 * t;
    t5 - t5.floor()
}

/// `x_0 = seed, x_{m+1} = prng_step(x_m)`, `count` values in total.
pub fn prng_sequence(seed: f64, count: usize) -> Result<Vec<f64>, GeneratorError> {
    if count == 0 {
        return Err(GeneratorError::EmptyCount);
    }
    let mut out = Vec::with_capacity(count);
    out.push(seed);
    prng_step(seed)?;
    for _ in 1..count {
        let last = *out.last().expect("nonempty");
        out.push(step_unchecked(last));
    }
    Ok(out)
}

/// `count` records `(x_m, x_{m+1})` starting from `seed`.
pub fn prng_dataset(seed: f64, count: usize, split: usize) -> Result<Dataset, GeneratorError> {
    let xs = prng_sequence(seed, count + 1)?;
    let records = xs
        .windows(2)
        .map(|w| Record::new(Value::Real(w[0]), Value::Real(w[1])))
        .collect();
    Ok(Dataset::new(records, split)?
        .with_generator("prng", None)
        .with_extra("prng_seed", json!(seed)))
}

/// `floor(v · 2^bits) / 2^bits`; exact in binary64.
pub fn truncate_fraction(v: f64, bits: u32) -> f64 {
    let scale = (bits as f64).exp2();
    (v * scale).floor() / scale
}

#[derive(Debug, Clone)]
pub struct TruncatedPrng {
    pub dataset: Dataset,
    /// Precision in effect at each step, drawn uniformly from `s_min..=s`.
    pub precisions: Vec<u32>,
    /// The untruncated outputs `prng_step(x_m)`.
    pub exact_outputs: Vec<f64>,
}

/// The PRNG behind a service that answers with a varying precision.
///
/// The state chain runs at full binary64 precision. Each output is truncated
/// to `s''` fractional bits, with `s''` drawn per step from `s_min..=s` by a
/// generator seeded with `trigger_seed`; `s'' = s` leaves the output untouched.
/// Read as `s`-bit integers, outputs are then off by less than `2^(s - s_min)`.
pub fn prng_truncated(
    seed: f64,
    count: usize,
    s: u32,
    s_min: u32,
    trigger_seed: u64,
    split: usize,
) -> Result<TruncatedPrng, GeneratorError> {
    if !(1 <= s_min && s_min <= s && s <= 52) {
        return Err(GeneratorError::InvalidPrecision { s, s_min });
    }
    let xs = prng_sequence(seed, count + 1)?;
    let mut trigger = SplitMix64::new(trigger_seed);
    let mut records = Vec::with_capacity(count);
    let mut precisions = Vec::with_capacity(count);
    let mut exact_outputs = Vec::with_capacity(count);
    for w in xs.windows(2) {
        let (x, exact) = (w[0], w[1]);
        let bits = trigger.next_in_range(u64::from(s_min), u64::from(s)) as u32;
        let y = if bits == s { exact } else { truncate_fraction(exact, bits) };
        records.push(Record::new(Value::Real(x), Value::Real(y)));
        precisions.push(bits);
        exact_outputs.push(exact);
    }
    let dataset = Dataset::new(records, split)?
        .with_generator("prng_truncated", Some(trigger_seed))
        .with_extra("prng_seed", json!(seed))
        .with_extra("s", json!(s))
        .with_extra("s_min", json!(s_min))
        .with_extra("integer_scale", json!((s as f64).exp2()));
    Ok(TruncatedPrng {
        dataset,
        precisions,
        exact_outputs,
    })
}

/// Independent fair coin flips for both inputs and outputs.
pub fn coin_flip_dataset(count: usize, seed: u64, split: usize) -> Result<Dataset, GeneratorError> {
    if count == 0 {
        return Err(GeneratorError::EmptyCount);
    }
    let mut rng = SplitMix64::new(seed);
    let records = (0..count)
        .map(|_| {
            let x = BitString::from_iter([rng.next_bool()]);
            let y = BitString::from_iter([rng.next_bool()]);
            Record::new(Value::Bits(x), Value::Bits(y))
        })
        .collect();
    Ok(Dataset::new(records, split)?.with_generator("coin", Some(seed)))
}
