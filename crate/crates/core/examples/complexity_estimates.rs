//! Plain, conditional and forecast-ergodicity bounds on three datasets.

use aif::complexity::{estimate_k, fe_bound, Registry};
use aif::dataset::serialize_column;
use aif::generators::{coin_flip_dataset, prng_dataset};

fn main() {
    let registry = Registry::standard();
    let backend = registry.get("brotli").unwrap();
    println!("{:>6} {:>12} {:>10} {:>10}", "N", "K(Y) prng", "K(Y|X)", "coin FE");
    for n in [100, 1_000, 10_000, 100_000] {
        let prng = prng_dataset(0.0, n, n).unwrap();
        let ys = serialize_column(prng.train().iter().map(|r| &r.y));
        let plain = estimate_k(&ys, backend).bits;
        let cond = fe_bound(&prng, backend).unwrap().bits;
        let coin = fe_bound(&coin_flip_dataset(n, 0, n).unwrap(), backend).unwrap().bits;
        println!("{n:>6} {plain:>12} {cond:>10} {coin:>10}");
    }
    println!("all values are upper bounds in bits, up to an unmodeled machine constant");
}
