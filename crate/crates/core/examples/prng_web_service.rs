//! A service answering the PRNG with a random precision between s_min and s
//! bits: precise forecastable at eps = 2^(s - s_min) on the s-bit integer scale.

use aif::forecast::{classify, error_complexity_bound_check, ExactPrng, Metric, PrecisionSpec, Radius};
use aif::generators::prng_truncated;

fn main() {
    let (s, s_min) = (16, 8);
    let t = prng_truncated(0.0, 100_000, s, s_min, 0, 1).unwrap();
    let scale = f64::from(s).exp2();
    let eps = f64::from(s - s_min).exp2();
    let spec = PrecisionSpec::new(Metric::Absolute { scale }, Radius::Real(eps)).unwrap();
    let r = classify(&t.dataset, &mut ExactPrng, &spec).unwrap();
    let errors: Vec<f64> = r.per_record_errors.iter().map(|e| e.to_f64()).collect();
    let max = errors.iter().cloned().fold(0.0, f64::max);
    println!("class {} at eps = {eps} (integer scale 2^{s}); max error {max:.3}", r.class);

    let exact = classify(&t.dataset, &mut ExactPrng, &PrecisionSpec::exact()).unwrap();
    println!("under the exact metric: {} with P = {:.4}", exact.class, exact.p);

    let check = error_complexity_bound_check(&errors, eps, 1.0).unwrap();
    println!(
        "error codewords: longest {} bits, eps codeword + 1 allows {}; holds: {}",
        check.max_codeword_len,
        aif::selfdelim::lgstar_len(&check.epsilon_quantized) + 1,
        check.holds
    );
}
