//! The PRNG x -> frac((x + pi)^5) is oracle forecastable for its own map.

use aif::forecast::{classify, ExactPrng, NearestNeighbor, PrecisionSpec};
use aif::generators::prng_dataset;

fn main() {
    let ds = prng_dataset(0.0, 10_000, 5_000).unwrap();
    let exact = PrecisionSpec::exact();
    let r = classify(&ds, &mut ExactPrng, &exact).unwrap();
    println!("exact_prng: {} (P = {}, {} future records)", r.class, r.p, r.future);

    // A predictor that only memorises the training pairs never hits exactly.
    let r = classify(&ds, &mut NearestNeighbor::default(), &exact).unwrap();
    println!("knn1:       {} (P = {})", r.class, r.p);
    let r = classify(&ds, &mut NearestNeighbor::default(), &PrecisionSpec::absolute(0.05).unwrap()).unwrap();
    println!("knn1 at eps = 0.05: {} (P = {:.4})", r.class, r.p);
}
