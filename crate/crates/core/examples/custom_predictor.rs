//! Plugging a user-defined predictor into the classification harness.

use aif::dataset::Value;
use aif::forecast::{classify, ForecastError, Predictor, PrecisionSpec, TrainingView};
use aif::generators::prng_dataset;

/// Linear interpolation between the two training inputs around the query.
#[derive(Default)]
struct Interpolate {
    points: Vec<(f64, f64)>,
}

impl Predictor for Interpolate {
    fn name(&self) -> &str {
        "interpolate"
    }

    fn fit(&mut self, training: TrainingView<'_>) -> Result<(), ForecastError> {
        self.points = training
            .records()
            .iter()
            .filter_map(|r| match (&r.x, &r.y) {
                (Value::Real(x), Value::Real(y)) => Some((*x, *y)),
                _ => None,
            })
            .collect();
        self.points.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(())
    }

    fn predict(&self, x: &Value) -> Option<Value> {
        let Value::Real(x) = *x else { return None };
        let i = self.points.partition_point(|p| p.0 < x);
        let (a, b) = (self.points.get(i.checked_sub(1)?)?, self.points.get(i)?);
        if a.0 == b.0 {
            return Some(Value::Real(a.1));
        }
        // The map is increasing before frac, so a drop between neighbours is a wrap.
        let hi = if b.1 < a.1 { b.1 + 1.0 } else { b.1 };
        let t = (x - a.0) / (b.0 - a.0);
        Some(Value::Real((a.1 + t * (hi - a.1)).fract()))
    }
}

fn main() {
    let train = prng_dataset(0.0, 100_000, 100_000).unwrap();
    let fresh = prng_dataset(0.5, 10_000, 10_000).unwrap();
    let ds = aif::dataset::Dataset::join(&train, &fresh).unwrap();
    for eps in [1e-4, 1e-3, 1e-2] {
        let r = classify(&ds, &mut Interpolate::default(), &PrecisionSpec::absolute(eps).unwrap()).unwrap();
        println!("eps = {eps:e}: {} (P = {:.4})", r.class, r.p);
    }
}
