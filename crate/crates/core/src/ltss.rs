//! Longest tandem scattered subsequence: the longest subsequence that
//! occurs twice in a string without the two occurrences overlapping.
//!
//! Every split `F = P.S` is visited in order with one [`Comparator`]: each
//! step drops the split letter from the front of `S` and appends it to `P`,
//! so the LCS of every split is available without recomputation.

use std::time::{Duration, Instant};

use crate::string_compare::Comparator;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LtssResult {
    pub length: usize,
    /// Number of letters of `F` in the prefix `P` of the best split.
    pub split: usize,
    pub witness: Vec<u8>,
    /// 1-based positions of the witness inside `P`.
    pub first_occurrence: Vec<usize>,
    /// 1-based positions of the witness inside `S`, counted in `F`.
    pub second_occurrence: Vec<usize>,
}

impl LtssResult {
    pub fn witness_str(&self) -> String {
        String::from_utf8_lossy(&self.witness).into_owned()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LtssStats {
    /// Equal-letter position pairs of `F`, i.e. numbers appended overall.
    pub matches: u64,
    pub lambda_max: usize,
    pub extract_mins: u64,
    /// Entries moved out of each `T_k`, `k = 1..`.
    pub transfers: Vec<u64>,
    pub tree_ops: u64,
    pub elapsed: Duration,
}

/// Drives a comparator over the splits of `f`, one letter per step.
struct Scan<'a> {
    f: &'a [u8],
    comparator: Comparator,
    split: usize,
}

impl<'a> Scan<'a> {
    fn new(f: &'a [u8]) -> Self {
        Scan {
            f,
            comparator: Comparator::new(f),
            split: 0,
        }
    }

    /// Moves the split one letter right and returns the LCS of the new split.
    fn step(&mut self) -> usize {
        self.comparator
            .drop_front()
            .expect("split stays inside the string");
        self.comparator.append_to_p(self.f[self.split]);
        self.split += 1;
        self.comparator.lcs_length()
    }
}

/// LCS length of `(F[..t], F[t..])` for every split `t = 1..n-1`;
/// entry `t - 1` belongs to split `t`.
pub fn split_profile(f: &[u8]) -> Vec<usize> {
    let mut scan = Scan::new(f);
    (1..f.len()).map(|_| scan.step()).collect()
}

/// Best length and earliest split reaching it.
fn best_split(f: &[u8]) -> (usize, usize, Scan<'_>) {
    let mut scan = Scan::new(f);
    let (mut length, mut split) = (0, 0);
    for t in 1..f.len() {
        let lcs = scan.step();
        if lcs > length {
            length = lcs;
            split = t;
        }
    }
    (length, split, scan)
}

pub fn compute_ltss(f: &[u8]) -> LtssResult {
    let (_, split, _) = best_split(f);
    witnesses_at_split(f, split, 1).pop().unwrap_or_default()
}

/// Up to `limit` distinct witnesses at the best split, in LIS enumeration
/// order; the first one is what [`compute_ltss`] reports.
pub fn ltss_witnesses(f: &[u8], limit: usize) -> Vec<LtssResult> {
    let (_, split, _) = best_split(f);
    witnesses_at_split(f, split, limit)
}

/// Up to `limit` witnesses of the LCS between `f[..split]` and `f[split..]`.
pub fn witnesses_at_split(f: &[u8], split: usize, limit: usize) -> Vec<LtssResult> {
    let mut scan = Scan::new(f);
    for _ in 0..split.min(f.len().saturating_sub(1)) {
        scan.step();
    }
    let comparator = &scan.comparator;
    let Ok(all) = comparator.witnesses() else {
        return Vec::new();
    };
    all.take(limit)
        .map(|pairs| LtssResult {
            length: pairs.len(),
            split: scan.split,
            witness: pairs.iter().map(|&(i, _)| f[i - 1]).collect(),
            first_occurrence: pairs.iter().map(|&(i, _)| i).collect(),
            second_occurrence: pairs.iter().map(|&(_, j)| j).collect(),
        })
        .collect()
}

/// Runs the full scan and reports its counters.
pub fn ltss_stats(f: &[u8]) -> LtssStats {
    analyze(f).1
}

/// [`compute_ltss`] together with the counters of the scan.
pub fn analyze(f: &[u8]) -> (LtssResult, LtssStats) {
    let start = Instant::now();
    let (_, split, scan) = best_split(f);
    let result = witnesses_at_split(f, split, 1).pop().unwrap_or_default();
    let elapsed = start.elapsed();
    let counters = scan.comparator.structure().stats();
    let stats = LtssStats {
        matches: scan.comparator.matches(),
        lambda_max: counters.max_lis,
        extract_mins: counters.extract_min_calls,
        transfers: counters.transfers_out.clone(),
        tree_ops: counters.tree_ops,
        elapsed,
    };
    (result, stats)
}
