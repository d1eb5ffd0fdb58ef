//! Computable upper bounds on description length.
//!
//! True Kolmogorov complexity is incomputable; every number produced here is
//! the length of an actual lossless encoding, hence an upper bound up to the
//! additive machine constant, which is reported as unmodeled rather than
//! guessed.
//!
//! Conditional estimates use the joint-minus-context surrogate
//! `C(y ‖ SEP ‖ x) - C(y)`, clamped at zero. Both arguments are escaped
//! (`0xFF` doubled) so the two-byte separator `0xFF 0x00` cannot occur in data.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::dataset::{serialize_column, Dataset};
use crate::selfdelim::{decode_lgstar, write_lgstar_u64};

#[derive(Debug, Error)]
pub enum ComplexityError {
    #[error("unknown compressor backend {0:?}")]
    UnknownBackend(String),
    #[error("backend {0:?} failed its lossless round-trip check")]
    NotLossless(String),
    #[error("backend {backend:?} could not decode its own output: {message}")]
    Decode { backend: String, message: String },
    #[error("training split is empty")]
    EmptyTrainingSplit,
}

/// Output of a backend: the payload plus its exact length in bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compressed {
    pub payload: Vec<u8>,
    pub bit_len: u64,
}

pub trait Compressor: Send + Sync {
    fn name(&self) -> &str;
    fn compress(&self, data: &[u8]) -> Compressed;
    fn decompress(&self, compressed: &Compressed) -> Result<Vec<u8>, ComplexityError>;

    fn compressed_bits(&self, data: &[u8]) -> u64 {
        self.compress(data).bit_len
    }
}

/// Brotli at quality 9 with a 16 MiB window, so a context and the data that
/// follows it stay inside one match window for inputs up to several megabytes.
#[derive(Debug, Clone, Copy, Default)]
pub struct Brotli;

const BROTLI_QUALITY: u32 = 9;
const BROTLI_LGWIN: u32 = 24;

impl Compressor for Brotli {
    fn name(&self) -> &str {
        "brotli"
    }

    fn compress(&self, data: &[u8]) -> Compressed {
        let mut out = Vec::new();
        {
            let mut w = brotli::CompressorWriter::new(&mut out, 4096, BROTLI_QUALITY, BROTLI_LGWIN);
            w.write_all(data).expect("in-memory write");
        }
        let bit_len = 8 * out.len() as u64;
        Compressed { payload: out, bit_len }
    }

    fn decompress(&self, compressed: &Compressed) -> Result<Vec<u8>, ComplexityError> {
        let mut out = Vec::new();
        brotli::Decompressor::new(compressed.payload.as_slice(), 4096)
            .read_to_end(&mut out)
            .map_err(|e| ComplexityError::Decode {
                backend: self.name().to_string(),
                message: e.to_string(),
            })?;
        Ok(out)
    }
}

/// Byte-level run-length code with bit-exact output: an `lgstar` run count,
/// then per run the byte (8 bits) and `lgstar(run length - 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunLength;

impl Compressor for RunLength {
    fn name(&self) -> &str {
        "rle"
    }

    fn compress(&self, data: &[u8]) -> Compressed {
        let mut runs: Vec<(u8, u64)> = Vec::new();
        for &b in data {
            match runs.last_mut() {
                Some((v, n)) if *v == b => *n += 1,
                _ => runs.push((b, 1)),
            }
        }
        let mut out = BitString::new();
        write_lgstar_u64(&mut out, runs.len() as u64);
        for (byte, n) in runs {
            out.push_u64(u64::from(byte), 8);
            write_lgstar_u64(&mut out, n - 1);
        }
        Compressed {
            bit_len: out.len() as u64,
            payload: out.as_bytes().to_vec(),
        }
    }

    fn decompress(&self, compressed: &Compressed) -> Result<Vec<u8>, ComplexityError> {
        let err = |message: String| ComplexityError::Decode {
            backend: "rle".to_string(),
            message,
        };
        let mut bits = BitString::with_capacity(compressed.bit_len as usize);
        for i in 0..compressed.bit_len as usize {
            bits.push(compressed.payload[i / 8] & (0x80 >> (i % 8)) != 0);
        }
        let (runs, mut pos) = decode_lgstar(&bits, 0).map_err(|e| err(e.to_string()))?;
        let runs = runs.to_u64().ok_or_else(|| err("run count overflow".into()))?;
        let mut out = Vec::new();
        for _ in 0..runs {
            let byte = bits
                .read_uint(pos, 8)
                .and_then(|v| v.to_u8())
                .ok_or_else(|| err(format!("truncated run byte at bit {pos}")))?;
            pos += 8;
            let (n, next) = decode_lgstar(&bits, pos).map_err(|e| err(e.to_string()))?;
            pos = next;
            let n = n.to_usize().ok_or_else(|| err("run length overflow".into()))?;
            out.extend(std::iter::repeat_n(byte, n + 1));
        }
        Ok(out)
    }
}

/// Reports the input length itself: the "incompressible" calibration baseline.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Compressor for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn compress(&self, data: &[u8]) -> Compressed {
        Compressed {
            payload: data.to_vec(),
            bit_len: 8 * data.len() as u64,
        }
    }

    fn decompress(&self, compressed: &Compressed) -> Result<Vec<u8>, ComplexityError> {
        Ok(compressed.payload.clone())
    }
}

/// Named backends, each checked for losslessness when registered.
pub struct Registry {
    backends: BTreeMap<String, Box<dyn Compressor>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            backends: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Brotli)).expect("brotli is lossless");
        r.register(Box::new(RunLength)).expect("rle is lossless");
        r.register(Box::new(Identity)).expect("identity is lossless");
        r
    }

    pub fn register(&mut self, backend: Box<dyn Compressor>) -> Result<(), ComplexityError> {
        for sample in calibration_samples() {
            let restored = backend.decompress(&backend.compress(&sample))?;
            if restored != sample {
                return Err(ComplexityError::NotLossless(backend.name().to_string()));
            }
        }
        self.backends.insert(backend.name().to_string(), backend);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn Compressor, ComplexityError> {
        self.backends
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| ComplexityError::UnknownBackend(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.backends.keys().map(String::as_str)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

fn calibration_samples() -> Vec<Vec<u8>> {
    let mut lcg: u32 = 12345;
    let noise: Vec<u8> = (0..4096)
        .map(|_| {
            lcg = lcg.wrapping_mul(1_103_515_245).wrapping_add(12345);
            (lcg >> 16) as u8
        })
        .collect();
    vec![
        Vec::new(),
        vec![0xFF],
        b"0101010101010101".repeat(64),
        (0..=255u8).collect(),
        vec![0; 1000],
        noise,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Plain,
    Conditional,
    FeBound,
}

impl fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateKind::Plain => "plain",
            EstimateKind::Conditional => "conditional",
            EstimateKind::FeBound => "fe_bound",
        })
    }
}

/// An upper bound in bits. `machine_constant` is always `"unmodeled"`: the
/// additive constant relating the backend to a universal machine is unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityEstimate {
    pub bits: u64,
    pub backend: String,
    pub kind: EstimateKind,
    pub bound: &'static str,
    pub machine_constant: &'static str,
}

impl ComplexityEstimate {
    fn new(bits: u64, backend: &dyn Compressor, kind: EstimateKind) -> Self {
        Self {
            bits,
            backend: backend.name().to_string(),
            kind,
            bound: "upper",
            machine_constant: "unmodeled",
        }
    }
}

const ESCAPE: u8 = 0xFF;
const SEPARATOR: [u8; 2] = [ESCAPE, 0x00];

fn escape_into(out: &mut Vec<u8>, data: &[u8]) {
    for &b in data {
        out.push(b);
        if b == ESCAPE {
            out.push(ESCAPE);
        }
    }
}

fn escaped(data: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(data.len() + data.len() / 64);
    escape_into(&mut out, data);
    out
}

pub fn estimate_k(x: &[u8], backend: &dyn Compressor) -> ComplexityEstimate {
    ComplexityEstimate::new(backend.compressed_bits(x), backend, EstimateKind::Plain)
}

/// Estimates a bit string via its packed form prefixed by its `lgstar` length.
pub fn estimate_k_bits(x: &BitString, backend: &dyn Compressor) -> ComplexityEstimate {
    estimate_k(&pack_with_length(x), backend)
}

pub fn pack_with_length(x: &BitString) -> Vec<u8> {
    let mut framed = BitString::with_capacity(x.len() + 32);
    write_lgstar_u64(&mut framed, x.len() as u64);
    framed.extend_from(x);
    framed.as_bytes().to_vec()
}

/// `max(0, C(esc(context) ‖ SEP ‖ esc(x)) - C(esc(context)))`.
pub fn estimate_k_conditional(x: &[u8], context: &[u8], backend: &dyn Compressor) -> ComplexityEstimate {
    let context = escaped(context);
    let mut joint = Vec::with_capacity(context.len() + x.len() + 2 + x.len() / 64);
    joint.extend_from_slice(&context);
    joint.extend_from_slice(&SEPARATOR);
    escape_into(&mut joint, x);
    let bits = backend
        .compressed_bits(&joint)
        .saturating_sub(backend.compressed_bits(&context));
    ComplexityEstimate::new(bits, backend, EstimateKind::Conditional)
}

/// Upper bound on forecast ergodicity: the conditional estimate of the
/// training outputs given the training inputs.
pub fn fe_bound(dataset: &Dataset, backend: &dyn Compressor) -> Result<ComplexityEstimate, ComplexityError> {
    let train = dataset.train();
    if train.is_empty() {
        return Err(ComplexityError::EmptyTrainingSplit);
    }
    let xs = serialize_column(train.iter().map(|r| &r.x));
    let ys = serialize_column(train.iter().map(|r| &r.y));
    let mut est = estimate_k_conditional(&ys, &xs, backend);
    est.kind = EstimateKind::FeBound;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn registry_lookup() {
        let reg = Registry::standard();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["brotli", "identity", "rle"]);
        assert!(matches!(reg.get("zip"), Err(ComplexityError::UnknownBackend(_))));
    }

    struct Lossy;
    impl Compressor for Lossy {
        fn name(&self) -> &str {
            "lossy"
        }
        fn compress(&self, data: &[u8]) -> Compressed {
            Compressed {
                payload: data.iter().take(4).copied().collect(),
                bit_len: 32,
            }
        }
        fn decompress(&self, c: &Compressed) -> Result<Vec<u8>, ComplexityError> {
            Ok(c.payload.clone())
        }
    }

    #[test]
    fn lossy_backend_is_refused() {
        let mut reg = Registry::empty();
        assert!(matches!(reg.register(Box::new(Lossy)), Err(ComplexityError::NotLossless(_))));
    }

    #[test]
    fn rle_roundtrip_and_exact_lengths() {
        let data = b"aaaabbbcccccccccccccd".to_vec();
        let c = RunLength.compress(&data);
        assert_eq!(RunLength.decompress(&c).unwrap(), data);
        // 4 runs: lgstar(4) = 7 bits, then 8 + lgstar(n - 1) each, with
        // lgstar(3) = lgstar(2) = 4, lgstar(12) = 11, lgstar(0) = 2.
        assert_eq!(c.bit_len, 7 + (8 + 4) + (8 + 4) + (8 + 11) + (8 + 2));
        assert_eq!(RunLength.compressed_bits(&[]), 2);
    }

    #[test]
    fn empty_input_overhead_is_constant() {
        for name in ["brotli", "rle", "identity"] {
            let reg = Registry::standard();
            let b = reg.get(name).unwrap();
            assert_eq!(estimate_k(&[], b).bits, estimate_k(&[], b).bits);
        }
        assert_eq!(estimate_k(&[], &Brotli).bits, 8);
        assert_eq!(estimate_k(&[], &Identity).bits, 0);
    }

    #[test]
    fn repeated_pattern_is_far_below_raw_length() {
        let x = b"01".repeat(100_000);
        let est = estimate_k(&x, &Brotli);
        assert!(est.bits * 20 <= 8 * x.len() as u64, "{}", est.bits);
        let bits: BitString = "01".repeat(100_000).parse().unwrap();
        assert!(estimate_k_bits(&bits, &Brotli).bits * 20 <= bits.len() as u64);
    }

    #[test]
    fn self_conditioning_costs_a_few_bytes_at_any_length() {
        let mut rng = SplitMix64::new(5);
        for len in [1_000usize, 10_000, 100_000] {
            let mut x = vec![0u8; len];
            rng.fill_bytes(&mut x);
            let est = estimate_k_conditional(&x, &x, &Brotli);
            assert!(est.bits <= 256, "len {len}: {}", est.bits);
        }
    }

    #[test]
    fn unrelated_random_context_does_not_help() {
        let mut rng = SplitMix64::new(11);
        let mut x = vec![0u8; 20_000];
        let mut y = vec![0u8; 20_000];
        rng.fill_bytes(&mut x);
        rng.fill_bytes(&mut y);
        let plain = estimate_k(&x, &Brotli).bits as f64;
        let cond = estimate_k_conditional(&x, &y, &Brotli).bits as f64;
        assert!((cond - plain).abs() <= 0.1 * plain, "plain {plain} cond {cond}");
    }

    /// Splits an escaped joint stream back into (context, data).
    fn unescape_joint(joint: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let mut parts = vec![Vec::new()];
        let mut i = 0;
        while i < joint.len() {
            if joint[i] == ESCAPE {
                match joint[i + 1] {
                    ESCAPE => parts.last_mut().unwrap().push(ESCAPE),
                    0x00 => parts.push(Vec::new()),
                    other => panic!("bad escape {other}"),
                }
                i += 2;
            } else {
                parts.last_mut().unwrap().push(joint[i]);
                i += 1;
            }
        }
        assert_eq!(parts.len(), 2);
        (parts[0].clone(), parts[1].clone())
    }

    #[test]
    fn separator_cannot_collide_with_data() {
        let ctx = [0xFF, 0x00, 0xFF];
        let x = [0x00, 0xFF, 0xFF, 0x00];
        let mut joint = escaped(&ctx);
        joint.extend_from_slice(&SEPARATOR);
        escape_into(&mut joint, &x);
        assert_eq!(unescape_joint(&joint), (ctx.to_vec(), x.to_vec()));
    }

    #[test]
    fn conditional_is_clamped() {
        // The joint of a tiny x against a long context may compress to fewer bytes
        // than the context alone; the estimate must still be nonnegative.
        let ctx = b"abcabcabcabcabcabcabcabc".repeat(100);
        let est = estimate_k_conditional(b"abc", &ctx, &Brotli);
        assert!(est.bits < 64);
    }

    #[test]
    fn estimates_are_deterministic() {
        let data: Vec<u8> = (0..5000u32).map(|i| (i * i % 251) as u8).collect();
        let reg = Registry::standard();
        for name in reg.names() {
            let b = reg.get(name).unwrap();
            assert_eq!(estimate_k(&data, b), estimate_k(&data, b));
            assert_eq!(estimate_k_conditional(&data, &data[..100], b), estimate_k_conditional(&data, &data[..100], b));
        }
    }
}
