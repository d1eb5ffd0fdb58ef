use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use super::ForecastError;
use crate::bits::BitString;
use crate::dataset::{Record, Value, ValueKey};
use crate::generators::prng_step;

/// Read-only view of the training records `1..=N`. Predictors never see the
/// future split.
#[derive(Debug, Clone, Copy)]
pub struct TrainingView<'a> {
    records: &'a [Record],
}

impl<'a> TrainingView<'a> {
    pub(crate) fn new(records: &'a [Record]) -> Self {
        Self { records }
    }

    pub fn records(&self) -> &'a [Record] {
        self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

pub trait Predictor: Send + Sync {
    fn name(&self) -> &str;

    fn fit(&mut self, training: TrainingView<'_>) -> Result<(), ForecastError>;

    /// `None` marks a failed prediction, scored as an infinite error.
    fn predict(&self, x: &Value) -> Option<Value>;
}

pub const PREDICTOR_NAMES: [&str; 5] = ["exact_prng", "lookup", "knn1", "constant", "dyadic"];

pub fn predictor_by_name(name: &str) -> Result<Box<dyn Predictor>, ForecastError> {
    Ok(match name {
        "exact_prng" => Box::new(ExactPrng),
        "lookup" => Box::new(Lookup::default()),
        "knn1" | "knn-1" => Box::new(NearestNeighbor::default()),
        "constant" => Box::new(Constant::default()),
        "dyadic" => Box::new(DyadicValue),
        other => return Err(ForecastError::UnknownPredictor(other.to_string())),
    })
}

/// The closed-form PRNG map applied to real inputs.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactPrng;

impl Predictor for ExactPrng {
    fn name(&self) -> &str {
        "exact_prng"
    }

    fn fit(&mut self, _training: TrainingView<'_>) -> Result<(), ForecastError> {
        Ok(())
    }

    fn predict(&self, x: &Value) -> Option<Value> {
        match x {
            Value::Real(v) => prng_step(*v).ok().map(Value::Real),
            _ => None,
        }
    }
}

/// Exact-match table from training inputs to outputs; the first occurrence of
/// an input wins. Unseen inputs fail.
#[derive(Debug, Clone, Default)]
pub struct Lookup {
    table: HashMap<ValueKey, Value>,
}

impl Predictor for Lookup {
    fn name(&self) -> &str {
        "lookup"
    }

    fn fit(&mut self, training: TrainingView<'_>) -> Result<(), ForecastError> {
        self.table.clear();
        for r in training.records() {
            self.table.entry(r.x.key()).or_insert_with(|| r.y.clone());
        }
        Ok(())
    }

    fn predict(&self, x: &Value) -> Option<Value> {
        self.table.get(&x.key()).cloned()
    }
}

/// One nearest neighbour: absolute distance on numbers, Hamming distance on
/// equal-length bit strings. Ties go to the earliest training record.
#[derive(Debug, Clone, Default)]
pub struct NearestNeighbor {
    /// Real inputs sorted by value, then by training index.
    sorted: Vec<(f64, usize)>,
    training: Vec<Record>,
}

impl NearestNeighbor {
    fn nearest_real(&self, x: f64) -> Option<usize> {
        if self.sorted.is_empty() || x.is_nan() {
            return None;
        }
        let at = self.sorted.partition_point(|&(v, _)| v < x);
        let mut best: Option<(f64, usize)> = None;
        let mut consider = |(v, idx): (f64, usize)| {
            let d = (v - x).abs();
            match best {
                Some((bd, bi)) if d > bd || (d == bd && idx > bi) => {}
                _ => best = Some((d, idx)),
            }
        };
        // Right neighbour run: all entries equal to sorted[at].0 start at `at`,
        // and the smallest index among them comes first.
        if let Some(&right) = self.sorted.get(at) {
            consider(right);
        }
        // Left neighbour run: step back to the first entry sharing the value.
        if at > 0 {
            let v = self.sorted[at - 1].0;
            let first = self.sorted[..at].partition_point(|&(w, _)| w < v);
            consider(self.sorted[first]);
        }
        best.map(|(_, idx)| idx)
    }

    fn nearest_generic(&self, x: &Value) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for (idx, r) in self.training.iter().enumerate() {
            let d = match (x, &r.x) {
                (Value::Bits(a), Value::Bits(b)) if a.len() == b.len() => {
                    a.iter().zip(b.iter()).filter(|(p, q)| p != q).count() as f64
                }
                (Value::Rational(a), Value::Rational(b)) => (a - b).to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
                _ => continue,
            };
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, idx));
            }
        }
        best.map(|(_, idx)| idx)
    }
}

impl Predictor for NearestNeighbor {
    fn name(&self) -> &str {
        "knn1"
    }

    fn fit(&mut self, training: TrainingView<'_>) -> Result<(), ForecastError> {
        self.training = training.records().to_vec();
        self.sorted = self
            .training
            .iter()
            .enumerate()
            .filter_map(|(i, r)| match r.x {
                Value::Real(v) if !v.is_nan() => Some((v, i)),
                _ => None,
            })
            .collect();
        self.sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(())
    }

    fn predict(&self, x: &Value) -> Option<Value> {
        let idx = match x {
            Value::Real(v) => self.nearest_real(*v),
            other => self.nearest_generic(other),
        }?;
        Some(self.training[idx].y.clone())
    }
}

/// Ignores the input: the most frequent training output for bit strings
/// (earliest on ties), the mean for numbers.
#[derive(Debug, Clone, Default)]
pub struct Constant {
    value: Option<Value>,
}

impl Predictor for Constant {
    fn name(&self) -> &str {
        "constant"
    }

    fn fit(&mut self, training: TrainingView<'_>) -> Result<(), ForecastError> {
        let records = training.records();
        self.value = match records.first().map(|r| &r.y) {
            None => None,
            Some(Value::Bits(_)) => {
                let mut counts: HashMap<&BitString, (usize, usize)> = HashMap::new();
                for (i, r) in records.iter().enumerate() {
                    if let Value::Bits(b) = &r.y {
                        counts.entry(b).or_insert((0, i)).0 += 1;
                    }
                }
                counts
                    .into_iter()
                    .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
                    .map(|(b, _)| Value::Bits(b.clone()))
            }
            Some(Value::Real(_)) => {
                let sum: f64 = records
                    .iter()
                    .map(|r| match r.y {
                        Value::Real(v) => v,
                        _ => 0.0,
                    })
                    .sum();
                Some(Value::Real(sum / records.len() as f64))
            }
            Some(Value::Rational(_)) => {
                let mut sum = BigRational::zero();
                for r in records {
                    if let Value::Rational(v) = &r.y {
                        sum += v;
                    }
                }
                Some(Value::Rational(sum / BigRational::from_usize(records.len()).expect("len")))
            }
        };
        Ok(())
    }

    fn predict(&self, _x: &Value) -> Option<Value> {
        self.value.clone()
    }
}

/// Reads a bit string `d_1 d_2 ... d_m` as the binary fraction `0.d_1 d_2 ... d_m`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicValue;

impl Predictor for DyadicValue {
    fn name(&self) -> &str {
        "dyadic"
    }

    fn fit(&mut self, _training: TrainingView<'_>) -> Result<(), ForecastError> {
        Ok(())
    }

    fn predict(&self, x: &Value) -> Option<Value> {
        let Value::Bits(digits) = x else { return None };
        let numer = digits.read_uint(0, digits.len())?;
        let denom = BigInt::from(1) << digits.len();
        Some(Value::Rational(BigRational::new(BigInt::from(numer), denom)))
    }
}
