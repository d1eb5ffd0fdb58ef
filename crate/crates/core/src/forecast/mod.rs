//! Forecastability verdicts for a given predictor: per-record errors on the
//! future split, PrF-locus curves, OF/PF/PrF classification and the search for
//! the smallest training split that makes a dataset forecastable.

mod metric;
mod predictor;

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use metric::{error, ErrorValue, Metric, PrecisionSpec, Radius};
pub use predictor::{
    predictor_by_name, Constant, DyadicValue, ExactPrng, Lookup, NearestNeighbor, Predictor, TrainingView,
    PREDICTOR_NAMES,
};

use crate::dataset::{Dataset, DatasetError, Record, ValueKind};
use crate::selfdelim::lgstar_len;

#[derive(Debug, Error)]
pub enum ForecastError {
    #[error("unknown metric {0:?} (expected abs, hamming or exact)")]
    UnknownMetric(String),
    #[error("unknown predictor {0:?}")]
    UnknownPredictor(String),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("radius schedule has {len} entries, record {index} needs one")]
    ScheduleTooShort { index: usize, len: usize },
    #[error("value kinds differ: {0} vs {1}")]
    KindMismatch(ValueKind, ValueKind),
    #[error("Hamming distance needs equal lengths, got {0} and {1}")]
    UnequalLengths(usize, usize),
    #[error("metric {metric} does not apply to {kind} outputs")]
    MetricMismatch { metric: &'static str, kind: ValueKind },
    #[error("dataset has no future records")]
    EmptyFuture,
    #[error("epsilon grid is empty")]
    EmptyGrid,
    #[error("epsilon grid is not sorted ascending at position {0}")]
    UnsortedGrid(usize),
    #[error("error {index} is not finite")]
    NonFiniteError { index: usize },
    #[error("resolution must be positive and finite, got {0}")]
    InvalidResolution(f64),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

fn check_metric(metric: Metric, kind: ValueKind) -> Result<(), ForecastError> {
    let ok = match metric {
        Metric::Exact => true,
        Metric::Hamming => kind == ValueKind::Binary,
        Metric::Absolute { .. } => kind != ValueKind::Binary,
    };
    if ok {
        Ok(())
    } else {
        Err(ForecastError::MetricMismatch {
            metric: metric.name(),
            kind,
        })
    }
}

fn score(predictor: &dyn Predictor, record: &Record, metric: Metric) -> ErrorValue {
    match predictor.predict(&record.x) {
        Some(y_star) => error(&record.y, &y_star, metric).unwrap_or(ErrorValue::Infinite),
        None => ErrorValue::Infinite,
    }
}

/// Fits `predictor` on records `1..=N` and returns the errors for `N+1..=M`,
/// in record order. A failed or ill-typed prediction scores `Infinite`.
pub fn evaluate(dataset: &Dataset, predictor: &mut dyn Predictor, metric: Metric) -> Result<Vec<ErrorValue>, ForecastError> {
    if dataset.future().is_empty() {
        return Err(ForecastError::EmptyFuture);
    }
    check_metric(metric, dataset.meta().y_kind)?;
    predictor.fit(TrainingView::new(dataset.train()))?;
    let predictor = &*predictor;
    Ok(dataset.future().par_iter().map(|r| score(predictor, r, metric)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocusPoint {
    pub epsilon: f64,
    pub fraction: f64,
}

/// Empirical `L(ε)`: the fraction of future errors strictly below `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocusCurve {
    pub predictor: String,
    pub n: usize,
    pub points: Vec<LocusPoint>,
}

impl LocusCurve {
    /// Step-function value at `epsilon`: the value at the last grid point not
    /// above it, or `None` left of the grid.
    pub fn value_at(&self, epsilon: f64) -> Option<f64> {
        let i = self.points.partition_point(|p| p.epsilon <= epsilon);
        i.checked_sub(1).map(|i| self.points[i].fraction)
    }

    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[0].fraction <= w[1].fraction)
            && self.points.iter().all(|p| (0.0..=1.0).contains(&p.fraction))
    }
}

pub fn locus_from_errors(errors: &[ErrorValue], epsilons: &[f64]) -> Result<Vec<LocusPoint>, ForecastError> {
    if epsilons.is_empty() {
        return Err(ForecastError::EmptyGrid);
    }
    if let Some(i) = epsilons.windows(2).position(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt())) {
        return Err(ForecastError::UnsortedGrid(i + 1));
    }
    if epsilons.iter().any(|e| e.is_nan()) {
        return Err(ForecastError::UnsortedGrid(0));
    }
    if errors.is_empty() {
        return Err(ForecastError::EmptyFuture);
    }
    let total = errors.len() as f64;
    // Exact errors keep their own comparison; everything else is sorted once.
    let exact = errors.iter().any(|e| matches!(e, ErrorValue::Exact(_)));
    let mut sorted: Vec<f64> = Vec::new();
    if !exact {
        sorted = errors.iter().map(ErrorValue::to_f64).collect();
        sorted.sort_by(f64::total_cmp);
    }
    Ok(epsilons
        .iter()
        .map(|&eps| {
            let below = if exact {
                let r = Radius::Real(eps);
                errors.iter().filter(|e| e.lt(&r)).count()
            } else {
                sorted.partition_point(|&e| e < eps)
            };
            LocusPoint {
                epsilon: eps,
                fraction: below as f64 / total,
            }
        })
        .collect())
}

pub fn locus(
    dataset: &Dataset,
    predictor: &mut dyn Predictor,
    metric: Metric,
    epsilons: &[f64],
) -> Result<LocusCurve, ForecastError> {
    if epsilons.is_empty() {
        return Err(ForecastError::EmptyGrid);
    }
    let errors = evaluate(dataset, predictor, metric)?;
    Ok(LocusCurve {
        predictor: predictor.name().to_string(),
        n: dataset.split(),
        points: locus_from_errors(&errors, epsilons)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForecastClass {
    OF,
    PF,
    PrF,
    #[serde(rename = "trivial")]
    Trivial,
}

impl fmt::Display for ForecastClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForecastClass::OF => "OF",
            ForecastClass::PF => "PF",
            ForecastClass::PrF => "PrF",
            ForecastClass::Trivial => "trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForecastReport {
    pub class: ForecastClass,
    pub predictor: String,
    pub n: usize,
    pub m: usize,
    pub epsilon: PrecisionSpec,
    /// Fraction of future records inside the precision ball.
    pub p: f64,
    pub precise: usize,
    pub future: usize,
    /// Errors for records `N+1..=M`; infinite errors serialize as `null`.
    pub per_record_errors: Vec<ErrorValue>,
}

impl ForecastReport {
    /// OF ⇒ every error is 0, so the PF predicate holds at every ε > 0 with
    /// P = 1 there; PF ⇒ P = 1; PrF ⇒ P < 1.
    pub fn inclusion_chain_holds(&self) -> bool {
        let all_within = self.precise == self.future;
        let p_consistent = self.future == 0 || self.p == self.precise as f64 / self.future as f64;
        p_consistent
            && match self.class {
                ForecastClass::OF => {
                    self.per_record_errors.iter().all(ErrorValue::is_zero)
                        && locus_from_errors(&self.per_record_errors, &[f64::MIN_POSITIVE])
                            .map(|l| l[0].fraction == 1.0)
                            .unwrap_or(false)
                }
                ForecastClass::PF => all_within && self.p == 1.0,
                ForecastClass::PrF => !all_within && self.p < 1.0,
                ForecastClass::Trivial => self.future == 0 && self.p == 1.0,
            }
    }
}

fn classify_errors(errors: &[ErrorValue], precision: &PrecisionSpec, n: usize) -> Result<(ForecastClass, usize), ForecastError> {
    if errors.is_empty() {
        return Ok((ForecastClass::Trivial, 0));
    }
    let mut precise = 0;
    for (i, e) in errors.iter().enumerate() {
        if precision.within(e, n + i + 1)? {
            precise += 1;
        }
    }
    let class = if errors.iter().all(ErrorValue::is_zero) {
        ForecastClass::OF
    } else if precise == errors.len() {
        ForecastClass::PF
    } else {
        ForecastClass::PrF
    };
    Ok((class, precise))
}

/// An empty future split classifies as `Trivial` with P = 1.
pub fn classify(
    dataset: &Dataset,
    predictor: &mut dyn Predictor,
    precision: &PrecisionSpec,
) -> Result<ForecastReport, ForecastError> {
    let errors = if dataset.future().is_empty() {
        Vec::new()
    } else {
        evaluate(dataset, predictor, precision.metric)?
    };
    let n = dataset.split();
    let (class, precise) = classify_errors(&errors, precision, n)?;
    let future = errors.len();
    Ok(ForecastReport {
        class,
        predictor: predictor.name().to_string(),
        n,
        m: dataset.len(),
        epsilon: precision.clone(),
        p: if future == 0 { 1.0 } else { precise as f64 / future as f64 },
        precise,
        future,
        per_record_errors: errors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinimalN {
    Found { n: usize },
    NotFound { horizon: usize },
}

/// Smallest `N` in `1..=min(horizon, M)` such that, fitted on records `1..=N`,
/// the predictor puts every record `N+1..=M` inside the precision ball (OF
/// under the exact metric). `N = M` leaves nothing to predict and succeeds.
pub fn find_minimal_n(
    dataset: &Dataset,
    predictor: &mut dyn Predictor,
    precision: &PrecisionSpec,
    horizon: usize,
) -> Result<MinimalN, ForecastError> {
    check_metric(precision.metric, dataset.meta().y_kind)?;
    let records = dataset.records();
    let m = records.len();
    precision.radius_at(m)?;
    for n in 1..=horizon.min(m) {
        predictor.fit(TrainingView::new(&records[..n]))?;
        let p = &*predictor;
        let ok = records[n..]
            .par_iter()
            .enumerate()
            .all(|(i, r)| precision.within(&score(p, r, precision.metric), n + i + 1).unwrap_or(false));
        if ok {
            return Ok(MinimalN::Found { n });
        }
    }
    Ok(MinimalN::NotFound { horizon })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    /// Position in the error slice of the first violation.
    pub violating_index: Option<usize>,
    #[serde(serialize_with = "as_decimal")]
    pub epsilon_quantized: BigUint,
    pub max_codeword_len: u64,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub const DEFAULT_RESOLUTION: f64 = 1.0 / 65536.0;

fn quantize(v: f64, resolution: f64) -> BigUint {
    let q = (v / resolution).floor();
    num_traits::FromPrimitive::from_f64(q).unwrap_or_default()
}

/// Errors bounded by `ε` cost at most one bit more than `ε` to write with the
/// lg* code, once both are quantized to integers at `resolution` by floor.
pub fn error_complexity_bound_check(errors: &[f64], epsilon: f64, resolution: f64) -> Result<BoundCheck, ForecastError> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(ForecastError::InvalidResolution(resolution));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(ForecastError::InvalidPrecision(format!("epsilon {epsilon}")));
    }
    if let Some(index) = errors.iter().position(|e| !e.is_finite()) {
        return Err(ForecastError::NonFiniteError { index });
    }
    let eps_q = quantize(epsilon, resolution);
    let limit = lgstar_len(&eps_q) + 1;
    let eps_limit = eps_q.clone();
    let mut max_len = 0;
    let mut violating_index = None;
    for (i, &e) in errors.iter().enumerate() {
        let q = quantize(e.abs(), resolution);
        let len = lgstar_len(&q);
        max_len = max_len.max(len);
        if violating_index.is_none() && (e.abs() > epsilon || q > eps_limit || len > limit) {
            violating_index = Some(i);
        }
    }
    Ok(BoundCheck {
        holds: violating_index.is_none(),
        violating_index,
        epsilon_quantized: eps_q,
        max_codeword_len: max_len,
    })
}
