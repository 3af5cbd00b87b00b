//! Brute-force references used to cross-check the fast paths: the quadratic
//! LCS table, quadratic LIS, exhaustive LIS enumeration, a cubic LTSS and
//! validators for witnesses.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ltss::LtssResult;
use crate::ordered_list::{Position, Value};

/// Longest list accepted by [`enumerate_lis_naive`].
pub const MAX_ENUMERATION_LEN: usize = 20;
/// Longest string accepted by [`naive_ltss`].
pub const MAX_NAIVE_LTSS_LEN: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input of size {size} exceeds the oracle limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// `D[i][j]`: LCS length of `P[..i]` and `S[..j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    rows: usize,
    cols: usize,
    values: Vec<usize>,
}

impl DpTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(
            i < self.rows && j < self.cols,
            "cell ({i}, {j}) out of range"
        );
        self.values[i * self.cols + j]
    }

    /// `D[|P|][|S|]`.
    pub fn length(&self) -> usize {
        self.values[self.values.len() - 1]
    }

    /// `(|P| + 1, |S| + 1)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

pub fn dp_lcs(p: &[u8], s: &[u8]) -> DpTable {
    let (rows, cols) = (p.len() + 1, s.len() + 1);
    let mut values = vec![0; rows * cols];
    for i in 1..rows {
        for j in 1..cols {
            values[i * cols + j] = if p[i - 1] == s[j - 1] {
                values[(i - 1) * cols + j - 1] + 1
            } else {
                values[i * cols + j - 1].max(values[(i - 1) * cols + j])
            };
        }
    }
    DpTable { rows, cols, values }
}

/// One LCS as 1-based `(p_index, s_index)` pairs, by traceback preferring
/// the diagonal, then up, then left.
pub fn dp_lcs_witness(p: &[u8], s: &[u8]) -> Vec<(usize, usize)> {
    let table = dp_lcs(p, s);
    let (mut i, mut j) = (p.len(), s.len());
    let mut pairs = Vec::with_capacity(table.length());
    while i > 0 && j > 0 {
        if p[i - 1] == s[j - 1] && table.get(i, j) == table.get(i - 1, j - 1) + 1 {
            pairs.push((i, j));
            i -= 1;
            j -= 1;
        } else if table.get(i - 1, j) == table.get(i, j) {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    pairs.reverse();
    pairs
}

/// Letters match pairwise and both index sequences strictly increase.
pub fn is_common_subsequence(p: &[u8], s: &[u8], pairs: &[(usize, usize)]) -> bool {
    let in_range = pairs
        .iter()
        .all(|&(i, j)| (1..=p.len()).contains(&i) && (1..=s.len()).contains(&j));
    in_range
        && pairs.iter().all(|&(i, j)| p[i - 1] == s[j - 1])
        && pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
}

/// Length of the longest strictly increasing subsequence.
pub fn naive_lis(values: &[Value]) -> usize {
    let mut ending = vec![1; values.len()];
    for i in 0..values.len() {
        for j in 0..i {
            if values[j] < values[i] {
                ending[i] = ending[i].max(ending[j] + 1);
            }
        }
    }
    ending.into_iter().max().unwrap_or(0)
}

/// Every maximum-length strictly increasing subsequence, identified by its
/// positions. Pairs are `(value, position)` in list order.
pub fn enumerate_lis_naive(
    items: &[(Value, Position)],
) -> Result<BTreeSet<Vec<Position>>, OracleError> {
    if items.len() > MAX_ENUMERATION_LEN {
        return Err(OracleError::TooLarge {
            size: items.len(),
            limit: MAX_ENUMERATION_LEN,
        });
    }
    let mut best = BTreeSet::new();
    let mut best_len = 0;
    let mut chain = Vec::new();
    for start in 0..items.len() {
        extend_chains(items, start, &mut chain, &mut best, &mut best_len);
    }
    Ok(best)
}

fn extend_chains(
    items: &[(Value, Position)],
    at: usize,
    chain: &mut Vec<Position>,
    best: &mut BTreeSet<Vec<Position>>,
    best_len: &mut usize,
) {
    chain.push(items[at].1);
    if chain.len() > *best_len {
        *best_len = chain.len();
        best.clear();
    }
    if chain.len() == *best_len {
        best.insert(chain.clone());
    }
    for next in at + 1..items.len() {
        if items[next].0 > items[at].0 {
            extend_chains(items, next, chain, best, best_len);
        }
    }
    chain.pop();
}

/// Best LCS over all splits and the earliest split reaching it.
pub fn naive_ltss(f: &[u8]) -> Result<(usize, usize), OracleError> {
    if f.len() > MAX_NAIVE_LTSS_LEN {
        return Err(OracleError::TooLarge {
            size: f.len(),
            limit: MAX_NAIVE_LTSS_LEN,
        });
    }
    let mut best = (0, 0);
    for split in 1..f.len() {
        let length = dp_lcs(&f[..split], &f[split..]).length();
        if length > best.0 {
            best = (length, split);
        }
    }
    Ok(best)
}

/// Checks that the witness occurs at both occurrence lists, the first
/// inside `F[..split]` and the second inside `F[split..]`.
pub fn validate_tandem(f: &[u8], result: &LtssResult) -> bool {
    let n = result.length;
    if result.witness.len() != n
        || result.first_occurrence.len() != n
        || result.second_occurrence.len() != n
        || result.split > f.len()
    {
        return false;
    }
    let increasing = |occ: &[usize]| occ.windows(2).all(|w| w[0] < w[1]);
    if !increasing(&result.first_occurrence) || !increasing(&result.second_occurrence) {
        return false;
    }
    let first_ok = result
        .first_occurrence
        .iter()
        .all(|&i| (1..=result.split).contains(&i));
    let second_ok = result
        .second_occurrence
        .iter()
        .all(|&j| (result.split + 1..=f.len()).contains(&j));
    first_ok
        && second_ok
        && (0..n).all(|k| {
            let letter = result.witness[k];
            f[result.first_occurrence[k] - 1] == letter
                && f[result.second_occurrence[k] - 1] == letter
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dp_table_values() {
        let t = dp_lcs(b"AGCG", b"AACGGGTA");
        assert_eq!(t.get(4, 3), 2);
        assert_eq!(t.get(4, 8), 3);
        assert_eq!(t.length(), 3);
        let z = dp_lcs(b"AGCG", b"");
        assert_eq!(z.dims(), (5, 1));
        assert!((0..5).all(|i| z.get(i, 0) == 0));
    }

    #[test]
    fn dp_witnesses() {
        let w = dp_lcs_witness(b"AGCG", b"AACGGGTA");
        assert_eq!(w.len(), 3);
        assert!(is_common_subsequence(b"AGCG", b"AACGGGTA", &w));
        assert!(is_common_subsequence(
            b"AGCG",
            b"AACGGGTA",
            &[(1, 1), (3, 3), (4, 4)]
        ));
        assert!(!is_common_subsequence(
            b"AGCG",
            b"AACGGGTA",
            &[(1, 1), (3, 3), (4, 3)]
        ));
        assert_eq!(dp_lcs_witness(b"A", b"A"), vec![(1, 1)]);
    }

    #[test]
    fn lis_lengths() {
        assert_eq!(naive_lis(&[8, 2, 1, 6, 5, 4, 3, 6, 5, 4]), 3);
        assert_eq!(naive_lis(&[]), 0);
        assert_eq!(naive_lis(&[8, 2, 6, 5, 4, 3, 6, 5, 4, 8, 2]), 4);
    }

    #[test]
    fn lis_enumeration() {
        let l2: Vec<(Value, Position)> = [
            (8, 1),
            (2, 2),
            (6, 4),
            (5, 5),
            (4, 6),
            (3, 7),
            (6, 8),
            (5, 9),
            (4, 10),
            (8, 11),
            (2, 12),
        ]
        .into();
        assert_eq!(enumerate_lis_naive(&l2).unwrap().len(), 6);
        assert_eq!(
            enumerate_lis_naive(&[(1, 1)]).unwrap(),
            BTreeSet::from([vec![1]])
        );
        assert_eq!(
            enumerate_lis_naive(&[(3, 1), (3, 2), (3, 3)]).unwrap(),
            BTreeSet::from([vec![1], vec![2], vec![3]])
        );
        let big: Vec<_> = (0..21).map(|i| (i, i + 1)).collect();
        assert_eq!(
            enumerate_lis_naive(&big),
            Err(OracleError::TooLarge {
                size: 21,
                limit: 20
            })
        );
    }

    #[test]
    fn naive_ltss_values() {
        assert_eq!(naive_ltss(b"AGCGAACGGGTA"), Ok((4, 5)));
        assert_eq!(naive_ltss(b"A"), Ok((0, 0)));
        assert!(naive_ltss(&[b'A'; 201]).is_err());
    }

    #[test]
    fn tandem_validation() {
        let f = b"AGCGAACGGGTA";
        let good = LtssResult {
            length: 4,
            split: 5,
            witness: b"ACGA".to_vec(),
            first_occurrence: vec![1, 3, 4, 5],
            second_occurrence: vec![6, 7, 8, 12],
        };
        assert!(validate_tandem(f, &good));

        let overlapping = LtssResult {
            split: 4,
            ..good.clone()
        };
        assert!(!validate_tandem(f, &overlapping));
        let wrong_letter = LtssResult {
            witness: b"ACGG".to_vec(),
            ..good.clone()
        };
        assert!(!validate_tandem(f, &wrong_letter));

        let too_long = LtssResult {
            length: 3,
            split: 2,
            witness: b"AGA".to_vec(),
            first_occurrence: vec![1, 2, 3],
            second_occurrence: vec![4, 5, 6],
        };
        assert!(!validate_tandem(b"AGAAGA", &too_long));
        assert!(validate_tandem(b"", &LtssResult::default()));
    }
}
