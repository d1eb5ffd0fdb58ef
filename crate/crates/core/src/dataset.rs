//! Paired input/output records with a training/future split, and their JSONL
//! wire form.
//!
//! A file starts with a header line `{"meta": {...}}` carrying the value kinds
//! and the split index, followed by one `{"x": "...", "y": "..."}` object per
//! record. Binary values are `0`/`1` strings, reals use the shortest decimal
//! form that parses back to the same binary64, and rationals are written `p/q`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::selfdelim::write_lgstar_u64;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("split index {split} is outside 1..={len}")]
    InvalidSplit { split: usize, len: usize },
    #[error("dataset has no records")]
    Empty,
    #[error("record {record}: {side} value is {found}, expected {expected}")]
    KindMismatch {
        record: usize,
        side: &'static str,
        found: ValueKind,
        expected: ValueKind,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Binary,
    Real,
    Rational,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueKind::Binary => "binary",
            ValueKind::Real => "real",
            ValueKind::Rational => "rational",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bits(BitString),
    Real(f64),
    Rational(BigRational),
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Bits(_) => ValueKind::Binary,
            Value::Real(_) => ValueKind::Real,
            Value::Rational(_) => ValueKind::Rational,
        }
    }

    pub fn parse(kind: ValueKind, text: &str) -> Result<Value, String> {
        match kind {
            ValueKind::Binary => BitString::from_str(text)
                .map(Value::Bits)
                .map_err(|e| e.to_string()),
            ValueKind::Real => text
                .parse::<f64>()
                .map(Value::Real)
                .map_err(|e| format!("{e}: {text:?}")),
            ValueKind::Rational => parse_rational(text).map(Value::Rational),
        }
    }

    /// Hashable identity of the value; reals compare by bit pattern.
    pub fn key(&self) -> ValueKey {
        match self {
            Value::Bits(b) => ValueKey::Bits(b.clone()),
            Value::Real(v) => ValueKey::Real(v.to_bits()),
            Value::Rational(r) => ValueKey::Rational(r.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bits(b) => write!(f, "{b}"),
            // Debug formatting is the shortest string that parses back to the same f64.
            Value::Real(v) => write!(f, "{v:?}"),
            Value::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueKey {
    Bits(BitString),
    Real(u64),
    Rational(BigRational),
}

pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in {text:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in {text:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub x: Value,
    pub y: Value,
}

impl Record {
    pub fn new(x: Value, y: Value) -> Self {
        Self { x, y }
    }
}

/// Header metadata. `extra` holds generator-specific facts such as an
/// absorption time; keys are kept sorted so output is stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub x_kind: ValueKind,
    pub y_kind: ValueKind,
    pub split_n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    records: Vec<Record>,
    meta: Meta,
}

impl Dataset {
    /// Builds a dataset, checking `1 <= split <= len` and uniform value kinds per side.
    pub fn new(records: Vec<Record>, split: usize) -> Result<Self, DatasetError> {
        let first = records.first().ok_or(DatasetError::Empty)?;
        let (x_kind, y_kind) = (first.x.kind(), first.y.kind());
        for (i, r) in records.iter().enumerate() {
            check_kind(i + 1, "x", r.x.kind(), x_kind)?;
            check_kind(i + 1, "y", r.y.kind(), y_kind)?;
        }
        if split == 0 || split > records.len() {
            return Err(DatasetError::InvalidSplit {
                split,
                len: records.len(),
            });
        }
        Ok(Self {
            records,
            meta: Meta {
                x_kind,
                y_kind,
                split_n: split,
                generator: None,
                seed: None,
                extra: BTreeMap::new(),
            },
        })
    }

    pub fn with_generator(mut self, name: &str, seed: Option<u64>) -> Self {
        self.meta.generator = Some(name.to_string());
        self.meta.seed = seed;
        self
    }

    pub fn with_extra(mut self, key: &str, value: serde_json::Value) -> Self {
        self.meta.extra.insert(key.to_string(), value);
        self
    }

    pub fn with_split(&self, split: usize) -> Result<Self, DatasetError> {
        if split == 0 || split > self.records.len() {
            return Err(DatasetError::InvalidSplit {
                split,
                len: self.records.len(),
            });
        }
        let mut out = self.clone();
        out.meta.split_n = split;
        Ok(out)
    }

    /// Training records followed by `future` as the new future split.
    pub fn join(train: &Dataset, future: &Dataset) -> Result<Self, DatasetError> {
        let mut records = train.records.clone();
        records.extend(future.records.iter().cloned());
        let mut out = Dataset::new(records, train.len())?;
        out.meta.generator = train.meta.generator.clone();
        out.meta.seed = train.meta.seed;
        Ok(out)
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn split(&self) -> usize {
        self.meta.split_n
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn train(&self) -> &[Record] {
        &self.records[..self.meta.split_n]
    }

    pub fn future(&self) -> &[Record] {
        &self.records[self.meta.split_n..]
    }

    pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Self, DatasetError> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(DatasetError::Empty),
        };
        let meta = parse_header(&header)?;
        let mut records = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line_no = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let wire: WireRecord = serde_json::from_str(&line).map_err(|e| DatasetError::Malformed {
                line: line_no,
                message: e.to_string(),
            })?;
            let x = Value::parse(meta.x_kind, &wire.x).map_err(|message| DatasetError::Malformed {
                line: line_no,
                message: format!("x: {message}"),
            })?;
            let y = Value::parse(meta.y_kind, &wire.y).map_err(|message| DatasetError::Malformed {
                line: line_no,
                message: format!("y: {message}"),
            })?;
            records.push(Record { x, y });
        }
        let mut out = Dataset::new(records, meta.split_n)?;
        out.meta = meta;
        Ok(out)
    }

    pub fn write_jsonl<W: Write>(&self, mut writer: W) -> Result<(), DatasetError> {
        let header = serde_json::to_string(&Header { meta: &self.meta }).expect("meta serializes");
        writeln!(writer, "{header}")?;
        for r in &self.records {
            let line = serde_json::to_string(&WireRecordRef {
                x: &r.x.to_string(),
                y: &r.y.to_string(),
            })
            .expect("record serializes");
            writeln!(writer, "{line}")?;
        }
        Ok(())
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("jsonl is utf-8")
    }
}

fn check_kind(record: usize, side: &'static str, found: ValueKind, expected: ValueKind) -> Result<(), DatasetError> {
    if found == expected {
        Ok(())
    } else {
        Err(DatasetError::KindMismatch {
            record,
            side,
            found,
            expected,
        })
    }
}

fn parse_header(line: &str) -> Result<Meta, DatasetError> {
    #[derive(Deserialize)]
    struct OwnedHeader {
        meta: Meta,
    }
    serde_json::from_str::<OwnedHeader>(line)
        .map(|h| h.meta)
        .map_err(|e| DatasetError::Malformed {
            line: 1,
            message: format!("expected a {{\"meta\": ...}} header: {e}"),
        })
}

#[derive(Serialize)]
struct Header<'a> {
    meta: &'a Meta,
}

#[derive(Deserialize)]
struct WireRecord {
    x: String,
    y: String,
}

#[derive(Serialize)]
struct WireRecordRef<'a> {
    x: &'a str,
    y: &'a str,
}

/// Byte serialization of one side of a dataset, used as compressor input.
///
/// Reals are 8 big-endian bytes each. Binary values are packed bits: an
/// `lgstar` record count, then a `0` flag and a single `lgstar` width when all
/// values share one length, or a `1` flag and a width per value otherwise.
/// Rationals are `p/q` lines.
pub fn serialize_column<'a, I>(values: I) -> Vec<u8>
where
    I: IntoIterator<Item = &'a Value>,
{
    let values: Vec<&Value> = values.into_iter().collect();
    match values.first().map(|v| v.kind()) {
        None => Vec::new(),
        Some(ValueKind::Real) => values
            .iter()
            .flat_map(|v| match v {
                Value::Real(r) => r.to_be_bytes(),
                _ => unreachable!("dataset columns have uniform kinds"),
            })
            .collect(),
        Some(ValueKind::Rational) => values
            .iter()
            .flat_map(|v| format!("{v}\n").into_bytes())
            .collect(),
        Some(ValueKind::Binary) => {
            let bits: Vec<&BitString> = values
                .iter()
                .map(|v| match v {
                    Value::Bits(b) => b,
                    _ => unreachable!("dataset columns have uniform kinds"),
                })
                .collect();
            let mut out = BitString::new();
            write_lgstar_u64(&mut out, bits.len() as u64);
            let width = bits[0].len();
            if bits.iter().all(|b| b.len() == width) {
                out.push(false);
                write_lgstar_u64(&mut out, width as u64);
                for b in &bits {
                    out.extend_from(b);
                }
            } else {
                out.push(true);
                for b in &bits {
                    write_lgstar_u64(&mut out, b.len() as u64);
                    out.extend_from(b);
                }
            }
            out.as_bytes().to_vec()
        }
    }
}
