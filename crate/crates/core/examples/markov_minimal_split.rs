//! Minimal training splits for a lookup table on Markov chain outputs.

use aif::forecast::{find_minimal_n, Lookup, MinimalN, PrecisionSpec};
use aif::generators::{markov_simulate, MarkovChainSpec};

const ABSORBING: &str = r#"{
  "states": ["A", "B", "C"],
  "transition": [[0.5, 0.4, 0.1], [0.3, 0.5, 0.2], [0.0, 0.0, 1.0]],
  "labels": ["00", "01", "11"],
  "start": [1.0, 0.0, 0.0],
  "kind": "absorbing"
}"#;

const CYCLE: &str = r#"{
  "states": 4,
  "transition": [[0.2, 0.8, 0, 0], [0, 0.3, 0.7, 0], [0, 0, 0.4, 0.6], [0.9, 0, 0, 0.1]],
  "labels": ["0", "1", "0", "1"],
  "start": [1, 0, 0, 0],
  "kind": "irreducible"
}"#;

fn show(name: &str, spec: &MarkovChainSpec, steps: usize) {
    println!("{name}");
    for seed in 0..8 {
        let t = markov_simulate(spec, steps, seed).unwrap();
        let n = match find_minimal_n(&t.dataset, &mut Lookup::default(), &PrecisionSpec::exact(), steps).unwrap() {
            MinimalN::Found { n } => n.to_string(),
            MinimalN::NotFound { .. } => "none".into(),
        };
        println!(
            "  seed {seed}: N* = {n:>4}  absorption = {:>4?}  coverage = {:>4?}",
            t.absorption_time, t.coverage_time
        );
    }
}

fn main() {
    show("absorbing chain", &MarkovChainSpec::from_json(ABSORBING).unwrap(), 300);
    show("irreducible chain", &MarkovChainSpec::from_json(CYCLE).unwrap(), 2000);
}
