use serde::{Deserialize, Serialize};
use serde_json::json;

use super::GeneratorError;
use crate::bits::BitString;
use crate::dataset::{Dataset, Record, Value};
use crate::rng::SplitMix64;

const ROW_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Absorbing,
    Irreducible,
    General,
}

/// Either a state count or a list of state names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSet {
    Count(usize),
    Names(Vec<String>),
}

impl StateSet {
    pub fn len(&self) -> usize {
        match self {
            StateSet::Count(n) => *n,
            StateSet::Names(names) => names.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite chain with an output label per state. The JSON form uses the
/// same field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovChainSpec {
    pub states: StateSet,
    pub transition: Vec<Vec<f64>>,
    pub labels: Vec<String>,
    pub start: Vec<f64>,
    pub kind: ChainKind,
}

impl MarkovChainSpec {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self, GeneratorError> {
        let spec: Self = serde_json::from_str(text).map_err(|e| GeneratorError::InvalidChain(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn is_absorbing_state(&self, i: usize) -> bool {
        self.transition[i][i] == 1.0
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let n = self.len();
        let bad = |msg: String| Err(GeneratorError::InvalidChain(msg));
        if n == 0 {
            return bad("no states".into());
        }
        if self.transition.len() != n {
            return bad(format!("transition has {} rows for {n} states", self.transition.len()));
        }
        for (i, row) in self.transition.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has {} entries for {n} states", row.len()));
            }
            check_distribution(row).map_err(|e| GeneratorError::InvalidChain(format!("row {i}: {e}")))?;
        }
        if self.labels.len() != n {
            return bad(format!("{} labels for {n} states", self.labels.len()));
        }
        for (i, l) in self.labels.iter().enumerate() {
            if l.parse::<BitString>().is_err() {
                return bad(format!("label {i} ({l:?}) is not a bit string"));
            }
        }
        if self.start.len() != n {
            return bad(format!("start has {} entries for {n} states", self.start.len()));
        }
        check_distribution(&self.start).map_err(|e| GeneratorError::InvalidChain(format!("start: {e}")))?;

        let reach = self.reachability();
        match self.kind {
            ChainKind::Absorbing => {
                let absorbing: Vec<usize> = (0..n).filter(|&i| self.is_absorbing_state(i)).collect();
                if absorbing.is_empty() {
                    return bad("absorbing chain without an absorbing state".into());
                }
                if let Some(i) = (0..n).find(|&i| !absorbing.iter().any(|&a| reach[i][a])) {
                    return bad(format!("state {i} cannot reach an absorbing state"));
                }
            }
            ChainKind::Irreducible => {
                if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !reach[i][j]) {
                    return bad(format!("not strongly connected: state {j} is unreachable from {i}"));
                }
            }
            ChainKind::General => {}
        }
        Ok(())
    }

    /// `reach[i][j]`: `j` is reachable from `i` in zero or more steps.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i == j || self.transition[i][j] > 0.0).collect())
            .collect();
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
        reach
    }

    fn state_width(&self) -> u32 {
        let top = (self.len() - 1) as u64;
        (64 - top.leading_zeros()).max(1)
    }
}

fn check_distribution(p: &[f64]) -> Result<(), String> {
    if let Some(v) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(format!("invalid probability {v}"));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > ROW_TOLERANCE {
        return Err(format!("sums to {sum}"));
    }
    Ok(())
}

fn sample(p: &[f64], rng: &mut SplitMix64) -> usize {
    let u = rng.next_f64();
    let mut acc = 0.0;
    for (j, &pj) in p.iter().enumerate() {
        acc += pj;
        if u < acc {
            return j;
        }
    }
    p.iter().rposition(|&pj| pj > 0.0).expect("validated distribution")
}

#[derive(Debug, Clone)]
pub struct MarkovTrajectory {
    /// `states[m - 1]` is the state at step `m`.
    pub states: Vec<usize>,
    /// First step (1-based) spent in an absorbing state.
    pub absorption_time: Option<usize>,
    /// First step (1-based) by which every state has appeared.
    pub coverage_time: Option<usize>,
    /// Records `(x_m, y_m) = (state index in binary, label)`; split at half.
    pub dataset: Dataset,
}

pub fn markov_simulate(spec: &MarkovChainSpec, steps: usize, seed: u64) -> Result<MarkovTrajectory, GeneratorError> {
    spec.validate()?;
    if steps == 0 {
        return Err(GeneratorError::EmptyCount);
    }
    let labels: Vec<BitString> = spec.labels.iter().map(|l| l.parse().expect("validated")).collect();
    let width = spec.state_width();
    let mut rng = SplitMix64::new(seed);
    let mut states = Vec::with_capacity(steps);
    let mut state = sample(&spec.start, &mut rng);
    states.push(state);
    for _ in 1..steps {
        state = sample(&spec.transition[state], &mut rng);
        states.push(state);
    }

    let absorption_time = states.iter().position(|&s| spec.is_absorbing_state(s)).map(|i| i + 1);
    let mut seen = vec![false; spec.len()];
    let mut remaining = spec.len();
    let mut coverage_time = None;
    for (i, &s) in states.iter().enumerate() {
        if !seen[s] {
            seen[s] = true;
            remaining -= 1;
            if remaining == 0 {
                coverage_time = Some(i + 1);
                break;
            }
        }
    }

    let records = states
        .iter()
        .map(|&s| {
            let mut x = BitString::new();
            x.push_u64(s as u64, width);
            Record::new(Value::Bits(x), Value::Bits(labels[s].clone()))
        })
        .collect();
    let mut dataset = Dataset::new(records, (steps / 2).max(1))?.with_generator("markov", Some(seed));
    if let Some(a) = absorption_time {
        dataset = dataset.with_extra("absorption_time", json!(a));
    }
    if let Some(c) = coverage_time {
        dataset = dataset.with_extra("coverage_time", json!(c));
    }
    Ok(MarkovTrajectory {
        states,
        absorption_time,
        coverage_time,
        dataset,
    })
}
