//! Self-delimiting integer codes.
//!
//! `lgstar` is the recursive length-of-length code: a leading `1`, a chain of
//! binary length fields, the binary value itself, and a closing `0`. The chain
//! is built right to left; each field holds the bit length of the chunk to its
//! right, and it stops once a 2-bit chunk is reached. The values 0 and 1 use the
//! free `0` lead bit: `00` and `01`.
//!
//! `bitdup` is the baseline that doubles every bit and appends `01`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("codeword truncated at bit offset {offset}")]
    Truncated { offset: usize },
    #[error("malformed bit pair at bit offset {offset}")]
    MalformedPair { offset: usize },
    #[error("unknown coding scheme {0:?} (expected lgstar or dup)")]
    UnknownScheme(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Lgstar,
    Bitdup,
}

impl FromStr for Scheme {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lgstar" => Ok(Scheme::Lgstar),
            "dup" | "bitdup" => Ok(Scheme::Bitdup),
            other => Err(CodecError::UnknownScheme(other.to_string())),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Lgstar => "lgstar",
            Scheme::Bitdup => "dup",
        })
    }
}

/// A value together with its encoding under a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub value: BigUint,
    pub scheme: Scheme,
    pub bits: BitString,
}

impl Codeword {
    pub fn new(scheme: Scheme, value: BigUint) -> Self {
        let bits = encode(scheme, &value);
        Self {
            value,
            scheme,
            bits,
        }
    }
}

/// `ceil(log2(v + 1))`; zero has bit length 0.
pub fn bitlen(v: &BigUint) -> u64 {
    v.bits()
}

pub fn encode(scheme: Scheme, n: &BigUint) -> BitString {
    match scheme {
        Scheme::Lgstar => encode_lgstar(n),
        Scheme::Bitdup => encode_bitdup(n),
    }
}

pub fn decode(scheme: Scheme, bits: &BitString, cursor: usize) -> Result<(BigUint, usize), CodecError> {
    match scheme {
        Scheme::Lgstar => decode_lgstar(bits, cursor),
        Scheme::Bitdup => decode_bitdup(bits, cursor),
    }
}

/// Decodes back-to-back codewords until the input is exhausted.
pub fn decode_stream(scheme: Scheme, bits: &BitString) -> Result<Vec<BigUint>, CodecError> {
    let mut cursor = 0;
    let mut out = Vec::new();
    while cursor < bits.len() {
        let (v, next) = decode(scheme, bits, cursor)?;
        out.push(v);
        cursor = next;
    }
    Ok(out)
}

pub fn encode_lgstar(n: &BigUint) -> BitString {
    let mut out = BitString::new();
    write_lgstar(&mut out, n);
    out
}

/// Appends the `lgstar` codeword of `n` to `out`.
pub fn write_lgstar(out: &mut BitString, n: &BigUint) {
    if n < &BigUint::from(2u8) {
        out.push(false);
        out.push(!n.is_zero());
        return;
    }
    // chunks[0] is the value itself; each later entry is the length of the previous.
    let mut chunks = vec![n.clone()];
    let mut width = bitlen(n);
    while width > 2 {
        let field = BigUint::from(width);
        width = bitlen(&field);
        chunks.push(field);
    }
    out.push(true);
    for chunk in chunks.iter().rev() {
        out.push_uint(chunk);
    }
    out.push(false);
}

pub fn write_lgstar_u64(out: &mut BitString, n: u64) {
    write_lgstar(out, &BigUint::from(n));
}

pub fn decode_lgstar(bits: &BitString, cursor: usize) -> Result<(BigUint, usize), CodecError> {
    let mut pos = cursor;
    let lead = bits.get(pos).ok_or(CodecError::Truncated { offset: pos })?;
    pos += 1;
    if !lead {
        let b = bits.get(pos).ok_or(CodecError::Truncated { offset: pos })?;
        return Ok((BigUint::from(b as u8), pos + 1));
    }
    let mut value = bits
        .read_uint(pos, 2)
        .ok_or(CodecError::Truncated { offset: bits.len() })?;
    pos += 2;
    loop {
        match bits.get(pos) {
            None => return Err(CodecError::Truncated { offset: pos }),
            Some(false) => return Ok((value, pos + 1)),
            Some(true) => {
                let width = value
                    .to_usize()
                    .filter(|w| pos + w <= bits.len())
                    .ok_or(CodecError::Truncated { offset: bits.len() })?;
                value = bits.read_uint(pos, width).expect("bounds checked above");
                pos += width;
            }
        }
    }
}

/// Length of the `lgstar` codeword for `n`, computed without encoding.
pub fn lgstar_len(n: &BigUint) -> u64 {
    let mut width = bitlen(n);
    if width < 2 {
        return 2;
    }
    let mut total = 2 + width;
    while width > 2 {
        width = 64 - u64::from(width.leading_zeros());
        total += width;
    }
    total
}

pub fn lgstar_len_u64(n: u64) -> u64 {
    lgstar_len(&BigUint::from(n))
}

pub fn encode_bitdup(n: &BigUint) -> BitString {
    let width = bitlen(n);
    let mut out = BitString::with_capacity(2 * width as usize + 2);
    for i in (0..width).rev() {
        let b = n.bit(i);
        out.push(b);
        out.push(b);
    }
    out.push(false);
    out.push(true);
    out
}

pub fn decode_bitdup(bits: &BitString, cursor: usize) -> Result<(BigUint, usize), CodecError> {
    let mut pos = cursor;
    let mut value = BigUint::default();
    loop {
        let (a, b) = match (bits.get(pos), bits.get(pos + 1)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(CodecError::Truncated { offset: bits.len() }),
        };
        match (a, b) {
            (false, true) => return Ok((value, pos + 2)),
            (true, false) => return Err(CodecError::MalformedPair { offset: pos }),
            (bit, _) => {
                value <<= 1u8;
                if bit {
                    value |= BigUint::from(1u8);
                }
            }
        }
        pos += 2;
    }
}

pub fn bitdup_len(n: &BigUint) -> u64 {
    2 * bitlen(n) + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodecRow {
    pub bits: u64,
    pub dup_len: u64,
    pub lgstar_len: u64,
}

/// Code lengths for `2^L - 1` at `L = 2, 2 + step, ...` up to `max_bits`.
pub fn codec_table(max_bits: u64, step: u64) -> Vec<CodecRow> {
    assert!(step >= 1, "step must be at least 1");
    (2..=max_bits)
        .step_by(step as usize)
        .map(|width| {
            let value = (BigUint::from(1u8) << width) - 1u8;
            CodecRow {
                bits: width,
                dup_len: encode_bitdup(&value).len() as u64,
                lgstar_len: encode_lgstar(&value).len() as u64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_values() {
        assert_eq!(encode_lgstar(&big(0)).to_string(), "00");
        assert_eq!(encode_lgstar(&big(1)).to_string(), "01");
        assert_eq!(encode_lgstar(&big(2)).to_string(), "1100");
        assert_eq!(encode_lgstar(&big(3)).to_string(), "1110");
        assert_eq!(encode_lgstar(&big(5)).to_string(), "1111010");
    }

    #[test]
    fn decodes_special_cases() {
        let bits: BitString = "01".parse().unwrap();
        assert_eq!(decode_lgstar(&bits, 0).unwrap(), (big(1), 2));
        let bits: BitString = "00".parse().unwrap();
        assert_eq!(decode_lgstar(&bits, 0).unwrap(), (big(0), 2));
    }

    #[test]
    fn truncation_reports_offset() {
        let full = encode_lgstar(&big(1200));
        let cut = full.slice(0, full.len() - 1);
        assert!(matches!(decode_lgstar(&cut, 0), Err(CodecError::Truncated { .. })));
        let one: BitString = "1".parse().unwrap();
        assert_eq!(decode_lgstar(&one, 0), Err(CodecError::Truncated { offset: 1 }));
        let empty = BitString::new();
        assert_eq!(decode_lgstar(&empty, 0), Err(CodecError::Truncated { offset: 0 }));
    }

    #[test]
    fn bitdup_basics() {
        assert_eq!(encode_bitdup(&big(1)).to_string(), "1101");
        assert_eq!(encode_bitdup(&big(0)).to_string(), "01");
        assert_eq!(encode_bitdup(&big(1200)).len(), 24);
        let bad: BitString = "1110".parse().unwrap();
        assert_eq!(decode_bitdup(&bad, 0), Err(CodecError::MalformedPair { offset: 2 }));
        let cut: BitString = "110".parse().unwrap();
        assert!(matches!(decode_bitdup(&cut, 0), Err(CodecError::Truncated { .. })));
    }

    #[test]
    fn length_function_matches_encoder() {
        for n in 0..5000u64 {
            assert_eq!(lgstar_len_u64(n), encode_lgstar(&big(n)).len() as u64, "n = {n}");
        }
    }

    #[test]
    fn length_bound_against_bitlen() {
        for n in 0..70_000u64 {
            let n = big(n);
            assert!(lgstar_len(&n) <= 2 * bitlen(&n) + 2 + 2);
        }
    }

    #[test]
    fn scheme_names() {
        assert_eq!("lgstar".parse::<Scheme>().unwrap(), Scheme::Lgstar);
        assert_eq!("dup".parse::<Scheme>().unwrap(), Scheme::Bitdup);
        assert!("omega".parse::<Scheme>().is_err());
    }

    #[test]
    fn table_rows() {
        let rows = codec_table(12, 3);
        assert_eq!(rows.iter().map(|r| r.bits).collect::<Vec<_>>(), vec![2, 5, 8, 11]);
        let eleven = rows.iter().find(|r| r.bits == 11).unwrap();
        assert_eq!(eleven.dup_len, 24);
        assert_eq!(eleven.lgstar_len, 22);
    }
}
