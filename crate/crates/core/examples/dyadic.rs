//! Binary expansions of omega in exact arithmetic, and the approximation task
//! y_m = omega forecast to within 2^-m.

use aif::forecast::{classify, DyadicValue, Metric, PrecisionSpec, Radius};
use aif::generators::{dyadic_dataset, dyadic_target_dataset};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let omega = BigRational::new(BigInt::from(11), BigInt::from(32));
    let ds = dyadic_dataset(&omega, 8).unwrap();
    for r in ds.records() {
        println!("x = {:<8} y = {}", r.x.to_string(), r.y);
    }

    let n = 64;
    let ds = dyadic_target_dataset(&omega, n).unwrap();
    let pad = BigRational::new(BigInt::from(1), BigInt::from(2).pow(64));
    let schedule = (1..=n as u32)
        .map(|m| Radius::Exact(BigRational::new(BigInt::from(1), BigInt::from(2).pow(m)) + &pad))
        .collect();
    let spec = PrecisionSpec::new(Metric::absolute(), Radius::Real(1.0)).unwrap().with_schedule(schedule).unwrap();
    let r = classify(&ds, &mut DyadicValue, &spec).unwrap();
    println!("eps_m = 2^-m + 2^-64: {} with P = {}", r.class, r.p);
}
