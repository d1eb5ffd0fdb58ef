mod common;

use aif::dataset::{Dataset, Value, ValueKind};
use aif::forecast::{
    classify, error_complexity_bound_check, evaluate, locus, locus_from_errors, predictor_by_name, ErrorValue,
    ExactPrng, ForecastClass, Lookup, Metric, NearestNeighbor, PrecisionSpec, Radius, PREDICTOR_NAMES,
};
use aif::generators::{coin_flip_dataset, dyadic_target_dataset, prng_dataset, prng_truncated};
use aif::selfdelim::lgstar_len_u64;
use num_bigint::BigInt;
use num_rational::BigRational;

use common::{corpus, q};

fn precisions_for(kind: ValueKind) -> Vec<PrecisionSpec> {
    let mut out = vec![PrecisionSpec::exact()];
    match kind {
        ValueKind::Binary => out.extend([0, 1, 2].map(PrecisionSpec::hamming)),
        _ => {
            for eps in [0.0, 1e-9, 0.01, 0.3, 2.0] {
                out.push(PrecisionSpec::absolute(eps).unwrap());
            }
            out.push(PrecisionSpec::new(Metric::Absolute { scale: 65536.0 }, Radius::Real(256.0)).unwrap());
        }
    }
    out
}

#[test]
fn inclusion_chain_across_the_corpus() {
    let mut checked = 0;
    for (name, ds) in corpus() {
        for precision in precisions_for(ds.meta().y_kind) {
            for p in PREDICTOR_NAMES {
                let mut predictor = predictor_by_name(p).unwrap();
                let report = classify(&ds, predictor.as_mut(), &precision).unwrap();
                assert!(report.inclusion_chain_holds(), "{name} {p} {precision:?}: {:?}", report.class);
                if report.class == ForecastClass::OF {
                    // OF must also pass as PF at any positive radius.
                    let pf = match ds.meta().y_kind {
                        ValueKind::Binary => PrecisionSpec::hamming(0),
                        _ => PrecisionSpec::absolute(1e-300).unwrap(),
                    };
                    let again = classify(&ds, predictor.as_mut(), &pf).unwrap();
                    assert_eq!(again.p, 1.0, "{name} {p}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn prng_with_the_exact_map_is_oracle_forecastable() {
    let ds = prng_dataset(0.0, 10_000, 5_000).unwrap();
    let r = classify(&ds, &mut ExactPrng, &PrecisionSpec::exact()).unwrap();
    assert_eq!(r.class, ForecastClass::OF);
    assert!(r.per_record_errors.iter().all(ErrorValue::is_zero));
}

#[test]
fn truncated_prng_is_precise_not_oracle() {
    let (s, s_min) = (16, 8);
    let t = prng_truncated(0.0, 20_000, s, s_min, 42, 1).unwrap();
    let eps = f64::from(s - s_min).exp2();
    let spec = PrecisionSpec::new(Metric::Absolute { scale: f64::from(s).exp2() }, Radius::Real(eps)).unwrap();
    let r = classify(&t.dataset, &mut ExactPrng, &spec).unwrap();
    assert_eq!(r.class, ForecastClass::PF);
    let exact = classify(&t.dataset, &mut ExactPrng, &PrecisionSpec::exact()).unwrap();
    assert_eq!(exact.class, ForecastClass::PrF);
    // Records kept at full precision are exact; their share is 1 / (s - s_min + 1).
    let expected = 1.0 / f64::from(s - s_min + 1);
    assert!((exact.p - expected).abs() < 0.02, "{}", exact.p);
}

#[test]
fn coin_flips_are_probabilistic_near_one_half() {
    let future = 5_000.0;
    let ds = coin_flip_dataset(10_000, 2024, 5_000).unwrap();
    let half_width = 2.576 * (0.25_f64 / future).sqrt();
    for p in ["lookup", "knn1", "constant"] {
        let mut predictor = predictor_by_name(p).unwrap();
        let r = classify(&ds, predictor.as_mut(), &PrecisionSpec::exact()).unwrap();
        assert_eq!(r.class, ForecastClass::PrF, "{p}");
        assert!((r.p - 0.5).abs() < half_width, "{p}: P = {}", r.p);
    }
}

#[test]
fn mismatched_predictors_fail_every_record() {
    let ds = coin_flip_dataset(100, 1, 50).unwrap();
    let errs = evaluate(&ds, &mut ExactPrng, Metric::Exact).unwrap();
    assert!(errs.iter().all(|e| *e == ErrorValue::Infinite));
}

#[test]
fn dyadic_target_is_precise_under_halving_radii() {
    let omega = q(11, 32);
    let ds = dyadic_target_dataset(&omega, 64).unwrap();
    let pad = BigRational::new(BigInt::from(1), BigInt::from(2).pow(64));
    let schedule: Vec<Radius> = (1..=64u32)
        .map(|m| Radius::Exact(BigRational::new(BigInt::from(1), BigInt::from(2).pow(m)) + &pad))
        .collect();
    let spec = PrecisionSpec::new(Metric::absolute(), Radius::Real(1.0)).unwrap().with_schedule(schedule).unwrap();
    let mut p = predictor_by_name("dyadic").unwrap();
    let r = classify(&ds, p.as_mut(), &spec).unwrap();
    assert_eq!(r.class, ForecastClass::PF);
    // Without the pad the boundary records sit exactly on the open ball's edge.
    let tight: Vec<Radius> = (1..=64u32)
        .map(|m| Radius::Exact(BigRational::new(BigInt::from(1), BigInt::from(2).pow(m))))
        .collect();
    let spec = PrecisionSpec::new(Metric::absolute(), Radius::Real(1.0)).unwrap().with_schedule(tight).unwrap();
    let r = classify(&ds, p.as_mut(), &spec).unwrap();
    assert_eq!(r.class, ForecastClass::PrF);
}

#[test]
fn locus_of_generated_data_is_a_cdf() {
    let train = prng_dataset(0.0, 5_000, 5_000).unwrap();
    let eval = prng_dataset(0.5, 1_000, 1_000).unwrap();
    let ds = Dataset::join(&train, &eval).unwrap();
    let grid: Vec<f64> = (0..=60).map(|i| if i == 0 { 0.0 } else { 1e-6 * 1.3f64.powi(i) }).collect();
    let curve = locus(&ds, &mut NearestNeighbor::default(), Metric::absolute(), &grid).unwrap();
    assert!(curve.is_monotone());
    assert_eq!(curve.points[0].fraction, 0.0);
    let errs = evaluate(&ds, &mut NearestNeighbor::default(), Metric::absolute()).unwrap();
    let max = errs.iter().map(ErrorValue::to_f64).fold(0.0, f64::max);
    assert_eq!(locus_from_errors(&errs, &[max * 1.0001 + 1e-300]).unwrap()[0].fraction, 1.0);
}

#[test]
fn locus_at_zero_excludes_exact_predictions() {
    let ds = prng_dataset(0.0, 100, 50).unwrap();
    let curve = locus(&ds, &mut ExactPrng, Metric::absolute(), &[0.0, 1e-300]).unwrap();
    assert_eq!(curve.points[0].fraction, 0.0);
    assert_eq!(curve.points[1].fraction, 1.0);
}

#[test]
fn lookup_on_unseen_reals_is_infinite() {
    let ds = prng_dataset(0.0, 100, 50).unwrap();
    let errs = evaluate(&ds, &mut Lookup::default(), Metric::absolute()).unwrap();
    assert!(errs.iter().all(|e| *e == ErrorValue::Infinite));
}

#[test]
fn error_codeword_lengths_stay_within_one_bit_of_epsilon() {
    let errs: Vec<f64> = (0..=255).map(f64::from).collect();
    let r = error_complexity_bound_check(&errs, 255.0, 1.0).unwrap();
    assert!(r.holds);
    assert_eq!(r.max_codeword_len, lgstar_len_u64(255));
    for e in 0..=255u64 {
        assert!(lgstar_len_u64(e) <= lgstar_len_u64(255) + 1);
    }
    let over = error_complexity_bound_check(&[3.0, 255.5], 255.0, 1.0).unwrap();
    assert_eq!(over.violating_index, Some(1));
}

#[test]
fn truncated_prng_errors_pass_the_bound_check() {
    let (s, s_min) = (16, 8);
    let t = prng_truncated(0.0, 10_000, s, s_min, 5, 1).unwrap();
    let scale = f64::from(s).exp2();
    let errs: Vec<f64> = t
        .dataset
        .records()
        .iter()
        .zip(&t.exact_outputs)
        .map(|(r, exact)| match r.y {
            Value::Real(y) => (exact - y) * scale,
            _ => unreachable!(),
        })
        .collect();
    let r = error_complexity_bound_check(&errs, f64::from(s - s_min).exp2(), 1.0).unwrap();
    assert!(r.holds);
}
