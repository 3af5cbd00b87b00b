#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tandem::{ThresholdStructure, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut impl Rng, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// Every string of length `len` over `alphabet`.
pub fn all_strings(alphabet: &[u8], len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |&b| {
                    let mut s = prefix.clone();
                    s.push(b);
                    s
                })
            })
            .collect();
    }
    out
}

/// The live list `L` next to a threshold structure: `(value, position)`
/// pairs in position order.
#[derive(Default)]
pub struct Shadow {
    pub items: Vec<(Value, usize)>,
}

impl Shadow {
    pub fn values(&self) -> Vec<Value> {
        self.items.iter().map(|&(v, _)| v).collect()
    }

    pub fn push(&mut self, value: Value, position: usize) {
        self.items.push((value, position));
    }

    /// Drops every occurrence of the minimum and returns it.
    pub fn extract_min(&mut self) -> Option<Value> {
        let min = self.items.iter().map(|&(v, _)| v).min()?;
        self.items.retain(|&(v, _)| v != min);
        Some(min)
    }
}

/// Random mix of appends (plain or batched) and extract-mins.
#[derive(Debug, Clone, Copy)]
pub enum Op {
    Append(Value),
    AppendBatch(Value),
    ExtractMin,
}

pub fn random_op(rng: &mut impl Rng, max_value: Value, extract_prob: f64) -> Op {
    if rng.gen_bool(extract_prob) {
        Op::ExtractMin
    } else if rng.gen_bool(0.5) {
        Op::Append(rng.gen_range(1..=max_value))
    } else {
        Op::AppendBatch(rng.gen_range(1..=max_value))
    }
}

/// Applies `op` to both; returns true when an extract-min ran.
pub fn apply(ts: &mut ThresholdStructure, shadow: &mut Shadow, op: &Op) -> bool {
    match *op {
        Op::Append(v) => {
            let p = ts.append(v);
            shadow.push(v, p);
            false
        }
        Op::AppendBatch(v) => {
            let p = ts.append_batch(v);
            shadow.push(v, p);
            false
        }
        Op::ExtractMin => {
            if ts.is_empty() {
                assert!(shadow.items.is_empty());
                return false;
            }
            let removed = ts.extract_min().unwrap();
            assert_eq!(Some(removed.value), shadow.extract_min());
            true
        }
    }
}
