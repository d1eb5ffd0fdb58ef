use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::ForecastError;
use crate::dataset::{parse_rational, Value};

/// How far a prediction may be from its target.
///
/// Each metric keeps its own ball convention: `Absolute` is the open ball
/// `d < ε`, `Hamming` the closed ball `d <= h`, and `Exact` the singleton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    /// `|y - y*| · scale`. A scale of `2^s` reads `[0, 1)` values as `s`-bit integers.
    Absolute { scale: f64 },
    Hamming,
    Exact,
}

impl Metric {
    pub fn absolute() -> Self {
        Metric::Absolute { scale: 1.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Absolute { .. } => "abs",
            Metric::Hamming => "hamming",
            Metric::Exact => "exact",
        }
    }
}

impl FromStr for Metric {
    type Err = ForecastError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abs" | "absolute" => Ok(Metric::absolute()),
            "hamming" => Ok(Metric::Hamming),
            "exact" => Ok(Metric::Exact),
            other => Err(ForecastError::UnknownMetric(other.to_string())),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A per-record error. Rational data yields exact errors; failed predictions
/// and exact-metric misses are `Infinite`.
#[derive(Debug, Clone, PartialEq)]
pub enum ErrorValue {
    Finite(f64),
    Exact(BigRational),
    Infinite,
}

impl ErrorValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ErrorValue::Finite(v) => *v == 0.0,
            ErrorValue::Exact(r) => r.is_zero(),
            ErrorValue::Infinite => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ErrorValue::Finite(v) => *v,
            ErrorValue::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            ErrorValue::Infinite => f64::INFINITY,
        }
    }

    pub fn cmp_radius(&self, radius: &Radius) -> Ordering {
        match (self, radius) {
            (ErrorValue::Infinite, Radius::Real(r)) if r.is_infinite() => Ordering::Equal,
            (ErrorValue::Infinite, _) => Ordering::Greater,
            (_, Radius::Real(r)) if r.is_infinite() => Ordering::Less,
            (ErrorValue::Finite(e), Radius::Real(r)) => e.partial_cmp(r).unwrap_or(Ordering::Greater),
            (ErrorValue::Finite(e), Radius::Exact(r)) => match BigRational::from_f64(*e) {
                Some(e) => e.cmp(r),
                None => Ordering::Greater,
            },
            (ErrorValue::Exact(e), Radius::Real(r)) => e.cmp(&BigRational::from_f64(*r).expect("finite radius")),
            (ErrorValue::Exact(e), Radius::Exact(r)) => e.cmp(r),
        }
    }

    /// Strictly inside the open ball of radius `radius`.
    pub fn lt(&self, radius: &Radius) -> bool {
        self.cmp_radius(radius) == Ordering::Less
    }

    pub fn le(&self, radius: &Radius) -> bool {
        self.cmp_radius(radius) != Ordering::Greater
    }
}

impl Serialize for ErrorValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.to_f64();
        if v.is_finite() {
            s.serialize_f64(v)
        } else {
            s.serialize_none()
        }
    }
}

/// A ball radius, exact when built from a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Radius {
    Real(f64),
    Exact(BigRational),
}

impl Radius {
    pub fn is_negative(&self) -> bool {
        match self {
            Radius::Real(r) => *r < 0.0 || r.is_nan(),
            Radius::Exact(r) => r.is_negative(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Radius::Real(r) => *r,
            Radius::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Radius::Real(r) => r.fract() == 0.0,
            Radius::Exact(r) => r.is_integer(),
        }
    }
}

impl FromStr for Radius {
    type Err = ForecastError;

    /// `p/q` parses as an exact rational, anything else as a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('/') {
            parse_rational(s)
                .map(Radius::Exact)
                .map_err(ForecastError::InvalidPrecision)
        } else {
            s.parse::<f64>()
                .map(Radius::Real)
                .map_err(|e| ForecastError::InvalidPrecision(format!("{s:?}: {e}")))
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Real(r) => write!(f, "{r:?}"),
            Radius::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Radius::Real(r) if r.is_finite() => s.serialize_f64(*r),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

/// Metric, radius and an optional per-record radius schedule (`ε_m`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionSpec {
    pub metric: Metric,
    pub radius: Radius,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(skip)]
    pub schedule: Option<Vec<Radius>>,
}

impl PrecisionSpec {
    pub fn new(metric: Metric, radius: Radius) -> Result<Self, ForecastError> {
        let scale = match metric {
            Metric::Absolute { scale } if scale != 1.0 => Some(scale),
            _ => None,
        };
        let spec = Self {
            metric,
            radius,
            scale,
            schedule: None,
        };
        spec.check_radius(&spec.radius)?;
        if let Metric::Absolute { scale } = metric {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(ForecastError::InvalidPrecision(format!("scale {scale} must be positive")));
            }
        }
        Ok(spec)
    }

    pub fn exact() -> Self {
        Self {
            metric: Metric::Exact,
            radius: Radius::Real(0.0),
            scale: None,
            schedule: None,
        }
    }

    pub fn absolute(epsilon: f64) -> Result<Self, ForecastError> {
        Self::new(Metric::absolute(), Radius::Real(epsilon))
    }

    pub fn hamming(h: u64) -> Self {
        Self {
            metric: Metric::Hamming,
            radius: Radius::Real(h as f64),
            scale: None,
            schedule: None,
        }
    }

    /// Radius `schedule[m - 1]` applies to record `m`.
    pub fn with_schedule(mut self, schedule: Vec<Radius>) -> Result<Self, ForecastError> {
        for r in &schedule {
            self.check_radius(r)?;
        }
        self.schedule = Some(schedule);
        Ok(self)
    }

    fn check_radius(&self, r: &Radius) -> Result<(), ForecastError> {
        if r.is_negative() {
            return Err(ForecastError::InvalidPrecision(format!("negative radius {r}")));
        }
        match self.metric {
            Metric::Hamming if !r.is_integer() => {
                Err(ForecastError::InvalidPrecision(format!("Hamming radius {r} is not an integer")))
            }
            Metric::Exact if r.to_f64() != 0.0 => {
                Err(ForecastError::InvalidPrecision(format!("exact metric takes radius 0, got {r}")))
            }
            _ => Ok(()),
        }
    }

    /// Radius for 1-based record index `m`.
    pub fn radius_at(&self, m: usize) -> Result<&Radius, ForecastError> {
        match &self.schedule {
            None => Ok(&self.radius),
            Some(s) => s.get(m - 1).ok_or(ForecastError::ScheduleTooShort { index: m, len: s.len() }),
        }
    }

    /// Ball membership under this metric's own convention.
    pub fn within(&self, err: &ErrorValue, m: usize) -> Result<bool, ForecastError> {
        let r = self.radius_at(m)?;
        Ok(match self.metric {
            Metric::Absolute { .. } => err.lt(r),
            Metric::Hamming => err.le(r),
            Metric::Exact => err.is_zero(),
        })
    }
}

/// Distance between a target `y` and a prediction `y_star`.
pub fn error(y: &Value, y_star: &Value, metric: Metric) -> Result<ErrorValue, ForecastError> {
    match metric {
        Metric::Exact => {
            if y.kind() != y_star.kind() {
                return Err(ForecastError::KindMismatch(y.kind(), y_star.kind()));
            }
            Ok(if y == y_star {
                ErrorValue::Finite(0.0)
            } else {
                ErrorValue::Infinite
            })
        }
        Metric::Hamming => match (y, y_star) {
            (Value::Bits(a), Value::Bits(b)) => {
                if a.len() != b.len() {
                    return Err(ForecastError::UnequalLengths(a.len(), b.len()));
                }
                let d = a.iter().zip(b.iter()).filter(|(p, q)| p != q).count();
                Ok(ErrorValue::Finite(d as f64))
            }
            _ => Err(ForecastError::KindMismatch(y.kind(), y_star.kind())),
        },
        Metric::Absolute { scale } => match (y, y_star) {
            (Value::Real(a), Value::Real(b)) => {
                let d = (a - b).abs() * scale;
                Ok(if d.is_nan() { ErrorValue::Infinite } else { ErrorValue::Finite(d) })
            }
            (Value::Rational(_), _) | (_, Value::Rational(_)) => {
                let a = exact_number(y)?;
                let b = exact_number(y_star)?;
                let scale = BigRational::from_f64(scale).expect("finite scale");
                Ok(match (a, b) {
                    (Some(a), Some(b)) => ErrorValue::Exact((a - b).abs() * scale),
                    _ => ErrorValue::Infinite,
                })
            }
            _ => Err(ForecastError::KindMismatch(y.kind(), y_star.kind())),
        },
    }
}

fn exact_number(v: &Value) -> Result<Option<BigRational>, ForecastError> {
    match v {
        Value::Rational(r) => Ok(Some(r.clone())),
        Value::Real(f) => Ok(BigRational::from_f64(*f)),
        Value::Bits(_) => Err(ForecastError::KindMismatch(v.kind(), crate::dataset::ValueKind::Real)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bits(s: &str) -> Value {
        Value::Bits(s.parse().unwrap())
    }

    #[test]
    fn hamming_counts_positions() {
        assert_eq!(error(&bits("0101"), &bits("0001"), Metric::Hamming).unwrap(), ErrorValue::Finite(1.0));
        assert!(matches!(
            error(&bits("01"), &bits("011"), Metric::Hamming),
            Err(ForecastError::UnequalLengths(2, 3))
        ));
    }

    #[test]
    fn absolute_difference() {
        assert_eq!(
            error(&Value::Real(0.75), &Value::Real(0.5), Metric::absolute()).unwrap(),
            ErrorValue::Finite(0.25)
        );
        let scaled = error(&Value::Real(0.75), &Value::Real(0.5), Metric::Absolute { scale: 256.0 }).unwrap();
        assert_eq!(scaled, ErrorValue::Finite(64.0));
    }

    #[test]
    fn exact_identity() {
        for v in [bits("0110"), Value::Real(0.3), Value::Rational(BigRational::new(BigInt::from(2), BigInt::from(7)))] {
            assert!(error(&v, &v, Metric::Exact).unwrap().is_zero());
        }
        assert_eq!(error(&bits("0"), &bits("1"), Metric::Exact).unwrap(), ErrorValue::Infinite);
    }

    #[test]
    fn kind_mismatch() {
        assert!(error(&bits("0"), &Value::Real(0.0), Metric::absolute()).is_err());
        assert!(error(&bits("0"), &Value::Real(0.0), Metric::Exact).is_err());
        assert!(error(&Value::Real(0.0), &Value::Real(0.0), Metric::Hamming).is_err());
    }

    #[test]
    fn rational_errors_are_exact() {
        let third = Value::Rational(BigRational::new(BigInt::from(1), BigInt::from(3)));
        let e = error(&third, &Value::Real(0.25), Metric::absolute()).unwrap();
        assert_eq!(e, ErrorValue::Exact(BigRational::new(BigInt::from(1), BigInt::from(12))));
        let r = Radius::Exact(BigRational::new(BigInt::from(1), BigInt::from(12)));
        assert!(!e.lt(&r));
        assert!(e.le(&r));
    }

    #[test]
    fn ball_conventions() {
        let abs = PrecisionSpec::absolute(0.5).unwrap();
        assert!(!abs.within(&ErrorValue::Finite(0.5), 1).unwrap());
        assert!(abs.within(&ErrorValue::Finite(0.49), 1).unwrap());
        let ham = PrecisionSpec::hamming(2);
        assert!(ham.within(&ErrorValue::Finite(2.0), 1).unwrap());
        assert!(!ham.within(&ErrorValue::Finite(3.0), 1).unwrap());
        let ex = PrecisionSpec::exact();
        assert!(ex.within(&ErrorValue::Finite(0.0), 1).unwrap());
        assert!(!abs.within(&ErrorValue::Infinite, 1).unwrap());
    }

    #[test]
    fn invalid_radii() {
        assert!(PrecisionSpec::absolute(-1.0).is_err());
        assert!(PrecisionSpec::new(Metric::Hamming, Radius::Real(1.5)).is_err());
        assert!(PrecisionSpec::new(Metric::Exact, Radius::Real(0.1)).is_err());
        assert!(PrecisionSpec::new(Metric::Absolute { scale: 0.0 }, Radius::Real(1.0)).is_err());
    }

    #[test]
    fn radius_parsing() {
        assert_eq!("0.25".parse::<Radius>().unwrap(), Radius::Real(0.25));
        assert_eq!(
            "1/4".parse::<Radius>().unwrap(),
            Radius::Exact(BigRational::new(BigInt::from(1), BigInt::from(4)))
        );
        assert!("x".parse::<Radius>().is_err());
    }
}
