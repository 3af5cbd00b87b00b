//! Decremental longest common subsequence between a growing string `P`
//! and a string `S` that loses letters from its front.
//!
//! The LCS is reduced to an LIS: for each letter of `P`, the positions of
//! that letter in `S` are appended to the number list in decreasing order,
//! so a strictly increasing subsequence uses every letter of `P` and of `S`
//! at most once. Dropping the first letter of `S` removes its position,
//! which is always the minimum of the list.

use thiserror::Error;

use crate::dynamic_lis::{LisError, ThresholdStructure};
use crate::ordered_list::{Position, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("S is already empty")]
    Exhausted,
    #[error("no common subsequence to report")]
    Empty,
}

impl From<LisError> for CompareError {
    fn from(_: LisError) -> Self {
        CompareError::Empty
    }
}

/// Positions of every byte in `S`, each list decreasing.
#[derive(Debug, Clone)]
pub struct MatchIndex {
    by_letter: Vec<Vec<Value>>,
    /// Length of the live prefix of each list; consumed positions form a
    /// suffix because the lists are decreasing and `S` shrinks at its front.
    live: Vec<usize>,
}

impl MatchIndex {
    pub fn build(s: &[u8]) -> Self {
        let mut by_letter = vec![Vec::new(); 256];
        for (i, &b) in s.iter().enumerate().rev() {
            by_letter[b as usize].push(i + 1);
        }
        let live = by_letter.iter().map(Vec::len).collect();
        MatchIndex { by_letter, live }
    }

    /// All positions of `letter` in the original `S`, decreasing.
    pub fn positions(&self, letter: u8) -> &[Value] {
        &self.by_letter[letter as usize]
    }

    /// Positions of `letter` greater than `front`.
    fn live_positions(&mut self, letter: u8, front: usize) -> &[Value] {
        let list = &self.by_letter[letter as usize];
        let live = &mut self.live[letter as usize];
        while *live > 0 && list[*live - 1] <= front {
            *live -= 1;
        }
        &list[..*live]
    }
}

/// The L-positions produced by appending one letter of `P`.
#[derive(Debug, Clone, Copy)]
struct Batch {
    p_index: usize,
    first: Position,
}

#[derive(Debug)]
pub struct Comparator {
    s: Vec<u8>,
    p: Vec<u8>,
    index: MatchIndex,
    ts: ThresholdStructure,
    front: usize,
    batches: Vec<Batch>,
    matches: u64,
}

impl Comparator {
    /// Starts with `P` empty and the whole of `s` as `S`.
    pub fn new(s: &[u8]) -> Self {
        Comparator {
            s: s.to_vec(),
            p: Vec::new(),
            index: MatchIndex::build(s),
            ts: ThresholdStructure::new(),
            front: 0,
            batches: Vec::new(),
            matches: 0,
        }
    }

    /// Appends `letter` to `P`.
    pub fn append_to_p(&mut self, letter: u8) {
        self.p.push(letter);
        let first = self.ts.next_position();
        let live = self.index.live_positions(letter, self.front);
        if live.is_empty() {
            return;
        }
        self.batches.push(Batch {
            p_index: self.p.len(),
            first,
        });
        self.matches += live.len() as u64;
        for &position in live {
            self.ts.append_batch(position);
        }
    }

    /// Removes the first live letter of `S`.
    pub fn drop_front(&mut self) -> Result<(), CompareError> {
        if self.front >= self.s.len() {
            return Err(CompareError::Exhausted);
        }
        self.front += 1;
        // Every stored value exceeds the old front, so the dropped position
        // is present exactly when it is the minimum.
        if self.ts.min() == Some(self.front) {
            self.ts.extract_min()?;
        }
        Ok(())
    }

    pub fn lcs_length(&self) -> usize {
        self.ts.lis_length()
    }

    /// Letters of `S` dropped so far; live `S` positions are `front + 1..`.
    pub fn front(&self) -> usize {
        self.front
    }

    pub fn p(&self) -> &[u8] {
        &self.p
    }

    /// The live part of `S`.
    pub fn s(&self) -> &[u8] {
        &self.s[self.front..]
    }

    /// Matches appended over the lifetime, i.e. the total length of `L`.
    pub fn matches(&self) -> u64 {
        self.matches
    }

    pub fn structure(&self) -> &ThresholdStructure {
        &self.ts
    }

    /// One longest common subsequence as `(p_index, s_index)` pairs, both
    /// 1-based, with `s_index` counted in the original `S`.
    pub fn witness(&self) -> Result<Vec<(usize, usize)>, CompareError> {
        self.witnesses()?.next().ok_or(CompareError::Empty)
    }

    /// Every longest common subsequence, lazily, in LIS enumeration order.
    /// Each pair set is produced once.
    pub fn witnesses(
        &self,
    ) -> Result<impl Iterator<Item = Vec<(usize, usize)>> + '_, CompareError> {
        let lis = self.ts.all_lis()?;
        Ok(lis.map(move |seq| {
            seq.into_iter()
                .map(|(value, position)| (self.p_index_of(position), value))
                .collect()
        }))
    }

    fn p_index_of(&self, position: Position) -> usize {
        let at = self.batches.partition_point(|b| b.first <= position);
        self.batches[at - 1].p_index
    }
}

/// LCS length of two strings through the LIS reduction.
pub fn lcs_length(p: &[u8], s: &[u8]) -> usize {
    let mut c = Comparator::new(s);
    p.iter().for_each(|&b| c.append_to_p(b));
    c.lcs_length()
}
