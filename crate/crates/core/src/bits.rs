//! Packed, explicitly sized bit strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit character {found:?} at position {position}")]
pub struct ParseBitsError {
    pub position: usize,
    pub found: char,
}

/// An ordered sequence of bits. Storage is packed most significant bit first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        if index >= self.len {
            return None;
        }
        Some(self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn extend_from(&mut self, other: &BitString) {
        if self.len.is_multiple_of(8) {
            self.bytes.extend_from_slice(&other.bytes);
            self.len += other.len;
        } else {
            for bit in other.iter() {
                self.push(bit);
            }
        }
    }

    /// Appends the binary representation of `value` without leading zeros.
    /// Zero appends nothing.
    pub fn push_uint(&mut self, value: &BigUint) {
        let width = value.bits();
        for i in (0..width).rev() {
            self.push(value.bit(i));
        }
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_u64(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    /// The binary representation of `value` without leading zeros.
    pub fn from_uint(value: &BigUint) -> Self {
        let mut out = BitString::with_capacity(value.bits() as usize);
        out.push_uint(value);
        out
    }

    /// Interprets `self[start..start + width]` as an unsigned integer.
    pub fn read_uint(&self, start: usize, width: usize) -> Option<BigUint> {
        if start.checked_add(width)? > self.len {
            return None;
        }
        let mut v = BigUint::default();
        for i in start..start + width {
            v <<= 1u8;
            if self.bytes[i / 8] & (0x80 >> (i % 8)) != 0 {
                v |= BigUint::from(1u8);
            }
        }
        Some(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        let mut out = BitString::with_capacity(end.saturating_sub(start));
        for i in start..end.min(self.len) {
            out.push(self.bytes[i / 8] & (0x80 >> (i % 8)) != 0);
        }
        out
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.len <= self.len && (0..prefix.len).all(|i| self.get(i) == prefix.get(i))
    }

    /// Packed bytes; unused trailing bits of the last byte are zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = BitString::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                found => return Err(ParseBitsError { position, found }),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn push_and_read_back() {
        let b: BitString = "1011001".parse().unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.as_bytes(), &[0b1011_0010]);
        assert_eq!(b.read_uint(0, 4), Some(BigUint::from(11u8)));
        assert_eq!(b.read_uint(4, 4), None);
    }

    #[test]
    fn rejects_non_binary_chars() {
        let err = "01x1".parse::<BitString>().unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(err.found, 'x');
    }

    #[test]
    fn empty_string_is_empty_bitstring() {
        let b: BitString = "".parse().unwrap();
        assert!(b.is_empty());
        assert_eq!(b.to_string(), "");
    }

    #[test]
    fn extend_unaligned() {
        let mut a: BitString = "101".parse().unwrap();
        let b: BitString = "0110011".parse().unwrap();
        a.extend_from(&b);
        assert_eq!(a.to_string(), "1010110011");
    }

    proptest! {
        #[test]
        fn textual_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
            let b: BitString = bits.iter().copied().collect();
            prop_assert_eq!(b.len(), bits.len());
            let parsed: BitString = b.to_string().parse().unwrap();
            prop_assert_eq!(parsed, b);
        }
    }
}
