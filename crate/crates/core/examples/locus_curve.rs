//! PrF-locus of a 1-NN predictor on PRNG pairs, printed as `epsilon,fraction`.

use aif::dataset::Dataset;
use aif::forecast::{locus, Metric, NearestNeighbor};
use aif::generators::prng_dataset;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let train = prng_dataset(0.0, n, n).unwrap();
    let fresh = prng_dataset(0.5, 10_000, 10_000).unwrap();
    let ds = Dataset::join(&train, &fresh).unwrap();
    let grid: Vec<f64> = (0..=40).map(|i| 1e-5 * 10f64.powf(i as f64 / 10.0)).collect();
    let curve = locus(&ds, &mut NearestNeighbor::default(), Metric::absolute(), &grid).unwrap();
    println!("epsilon,fraction");
    for p in &curve.points {
        println!("{:e},{}", p.epsilon, p.fraction);
    }
}
