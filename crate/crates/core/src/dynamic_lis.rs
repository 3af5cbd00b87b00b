//! Dynamic longest increasing subsequence over a list of numbers that grows
//! at its end and shrinks by removing its minimum.
//!
//! The state is the classic threshold structure: list `T_k` holds the values
//! whose longest strictly increasing subsequence ending there has length
//! `k`, in decreasing order, and the tails `min(T_1) < min(T_2) < ...` form
//! the array that appends binary-search (or walk, for batches).
//!
//! Every occurrence of a value keeps its position in `L`; positions come
//! from a counter that never goes back, so removals leave gaps. Those
//! positions make it possible to enumerate every longest increasing
//! subsequence of the current list.

use thiserror::Error;

use crate::ordered_list::{ListError, OrderedList, Position, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LisError {
    #[error("the number list is empty")]
    Empty,
    #[error(transparent)]
    List(#[from] ListError),
}

/// Lifetime operation counts of a [`ThresholdStructure`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counters {
    /// `transfers_out[k - 1]`: entries moved from `T_k` down to `T_(k-1)`.
    pub transfers_out: Vec<u64>,
    pub extract_min_calls: u64,
    pub append_calls: u64,
    /// Finger tree nodes touched by every list operation.
    pub tree_ops: u64,
    /// Largest LIS length ever reached.
    pub max_lis: usize,
}

impl Counters {
    pub fn total_transfers(&self) -> u64 {
        self.transfers_out.iter().sum()
    }
}

/// What one [`ThresholdStructure::extract_min`] removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub value: Value,
    pub positions: Vec<Position>,
}

#[derive(Debug, Default)]
pub struct ThresholdStructure {
    /// `lists[k - 1]` is `T_k`; never holds an empty list.
    lists: Vec<OrderedList>,
    /// `tails[k - 1] == min(T_k)`, strictly increasing.
    tails: Vec<Value>,
    live: usize,
    next_position: Position,
    /// 1-based list index kept between `append_batch` calls.
    cursor: usize,
    stats: Counters,
}

impl ThresholdStructure {
    pub fn new() -> Self {
        ThresholdStructure {
            next_position: 1,
            cursor: 1,
            ..Default::default()
        }
    }

    /// Builds the structure for `values` by repeated [`append`](Self::append).
    pub fn from_values(values: impl IntoIterator<Item = Value>) -> Self {
        let mut ts = ThresholdStructure::new();
        for v in values {
            ts.append(v);
        }
        ts
    }

    /// Current LIS length `λ`.
    pub fn lis_length(&self) -> usize {
        self.lists.len()
    }

    /// Number of live elements of `L`, duplicates included.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Smallest live value.
    pub fn min(&self) -> Option<Value> {
        self.tails.first().copied()
    }

    pub fn tails(&self) -> &[Value] {
        &self.tails
    }

    /// `T_k` for `1 <= k <= λ`.
    pub fn list(&self, k: usize) -> Option<&OrderedList> {
        k.checked_sub(1).and_then(|i| self.lists.get(i))
    }

    /// Keys of `T_1..T_λ`, each in decreasing order.
    pub fn keys(&self) -> Vec<Vec<Value>> {
        self.lists.iter().map(OrderedList::keys).collect()
    }

    /// The position the next appended element will receive.
    pub fn next_position(&self) -> Position {
        self.next_position
    }

    pub fn stats(&self) -> &Counters {
        &self.stats
    }

    /// Appends `value` to `L`, locating its list by binary search on the tails.
    pub fn append(&mut self, value: Value) -> Position {
        let k = self.tails.partition_point(|&t| t < value) + 1;
        self.insert_at(k, value)
    }

    /// Appends `value`, locating its list by walking a cursor kept between
    /// calls. Runs of decreasing values walk the cursor at most `λ` steps in
    /// total. The result is identical to [`append`](Self::append).
    pub fn append_batch(&mut self, value: Value) -> Position {
        let lambda = self.lists.len();
        let mut k = self.cursor.min(lambda + 1);
        if self.tail(k) < value {
            k = lambda + 1;
        }
        while k > 1 && self.tail(k - 1) >= value {
            k -= 1;
        }
        self.insert_at(k, value)
    }

    fn tail(&self, k: usize) -> Value {
        self.tails.get(k - 1).copied().unwrap_or(Value::MAX)
    }

    fn insert_at(&mut self, k: usize, value: Value) -> Position {
        let position = self.next_position;
        self.next_position += 1;
        self.live += 1;
        self.stats.append_calls += 1;
        if k > self.lists.len() {
            self.lists.push(OrderedList::new());
            self.tails.push(value);
            self.stats.transfers_out.resize(self.lists.len(), 0);
            self.stats.max_lis = self.stats.max_lis.max(self.lists.len());
        }
        let list = &mut self.lists[k - 1];
        list.insert(value, position)
            .expect("threshold lists only receive fresh positions");
        self.stats.tree_ops += list.take_work();
        self.tails[k - 1] = value;
        self.cursor = k;
        position
    }

    /// Removes every occurrence of the minimum value, then repairs the
    /// tail chain by moving runs of small keys from each `T_k` to `T_(k-1)`.
    pub fn extract_min(&mut self) -> Result<Extracted, LisError> {
        if self.is_empty() {
            return Err(LisError::Empty);
        }
        self.stats.extract_min_calls += 1;
        let removed = self.lists[0].remove_min()?;
        self.stats.tree_ops += self.lists[0].take_work();
        self.live -= removed.multiplicity();

        let lambda = self.lists.len();
        let mut k = 2;
        while k <= lambda {
            let below_min = self.lists[k - 2].min();
            if below_min.is_some_and(|m| m < self.tails[k - 1]) {
                break;
            }
            let bound = below_min.unwrap_or(Value::MAX);
            let (lower, upper) = self.lists.split_at_mut(k - 1);
            let source = &mut upper[0];
            let target = &mut lower[k - 2];
            let handle = source
                .predecessor(bound)
                .expect("the tail of T_k is within bound");
            let moved = source.split_at(handle)?;
            self.stats.transfers_out[k - 1] += moved.len() as u64;
            target.concatenate(moved)?;
            self.stats.tree_ops += source.take_work() + target.take_work();
            self.tails[k - 2] = self.tails[k - 1];
            k += 1;
        }
        match self.lists[k - 2].min() {
            Some(m) => self.tails[k - 2] = m,
            None => {
                debug_assert_eq!(k - 1, lambda, "only the last list can drain");
                self.lists.pop();
                self.tails.pop();
            }
        }
        Ok(Extracted {
            value: removed.value(),
            positions: removed.positions().to_vec(),
        })
    }

    /// Lazily enumerates every longest increasing subsequence of `L`.
    pub fn all_lis(&self) -> Result<LisIter<'_>, LisError> {
        if self.is_empty() {
            return Err(LisError::Empty);
        }
        Ok(LisIter {
            ts: self,
            frames: Vec::with_capacity(self.lis_length()),
            state: IterState::Fresh,
        })
    }

    /// First sequence in enumeration order: the lexicographically largest
    /// LIS by values, each element taken at its earliest valid position.
    pub fn first_lis(&self) -> Result<Vec<(Value, Position)>, LisError> {
        Ok(self.all_lis()?.next().expect("a non-empty list has an LIS"))
    }

    /// Checks the tail chain and every list's internal order.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.lists.len() != self.tails.len() {
            return Err("tails and lists disagree in length".into());
        }
        let mut live = 0;
        for (i, list) in self.lists.iter().enumerate() {
            list.check_invariants()
                .map_err(|e| format!("T_{}: {e}", i + 1))?;
            if list.min() != Some(self.tails[i]) {
                return Err(format!(
                    "Min[{}] = {} but min(T_{}) = {:?}",
                    i + 1,
                    self.tails[i],
                    i + 1,
                    list.min()
                ));
            }
            if i > 0 && self.tails[i - 1] >= self.tails[i] {
                return Err(format!("tails not increasing at {}", i + 1));
            }
            live += list.multiplicity();
        }
        if live != self.live {
            return Err(format!("ℓ = {} but {} positions stored", self.live, live));
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Frame {
    /// Index of the current entry within `T_k`.
    entry: usize,
    /// Index into that entry's position list.
    slot: usize,
    value: Value,
    position: Position,
}

enum IterState {
    Fresh,
    Running,
    Done,
}

/// Depth-first enumeration of longest increasing subsequences.
///
/// Starting from `T_λ`, each level picks an element `(v', p')` of `T_k`
/// with `v' < v` and `p' < p` of the element chosen one level up. The
/// candidates start at the predecessor of `v - 1` and continue through the
/// increasing positions of the smaller keys until `p' >= p`. The lowest
/// level varies fastest.
pub struct LisIter<'a> {
    ts: &'a ThresholdStructure,
    /// `frames[d]` is the choice made in `T_(λ - d)`.
    frames: Vec<Frame>,
    state: IterState,
}

impl LisIter<'_> {
    fn level(&self, depth: usize) -> &OrderedList {
        &self.ts.lists[self.ts.lis_length() - 1 - depth]
    }

    fn parent_bound(&self, depth: usize) -> (Option<Value>, Position) {
        match depth.checked_sub(1) {
            None => (Some(Value::MAX), Position::MAX),
            Some(d) => {
                let f = self.frames[d];
                (f.value.checked_sub(1), f.position)
            }
        }
    }

    fn first_choice(&self, depth: usize) -> Option<Frame> {
        let (value_bound, position_bound) = self.parent_bound(depth);
        let list = self.level(depth);
        let handle = list.predecessor(value_bound?)?;
        let entry = list.get(&handle).ok()?;
        let frame = Frame {
            entry: handle.index(),
            slot: 0,
            value: entry.value(),
            position: entry.first_position(),
        };
        (frame.position < position_bound).then_some(frame)
    }

    fn next_choice(&self, depth: usize, current: Frame) -> Option<Frame> {
        let (_, position_bound) = self.parent_bound(depth);
        let list = self.level(depth);
        let entry = list.entry_at(current.entry)?;
        let frame = if current.slot + 1 < entry.multiplicity() {
            Frame {
                slot: current.slot + 1,
                position: entry.positions()[current.slot + 1],
                ..current
            }
        } else {
            let next = list.entry_at(current.entry + 1)?;
            Frame {
                entry: current.entry + 1,
                slot: 0,
                value: next.value(),
                position: next.first_position(),
            }
        };
        (frame.position < position_bound).then_some(frame)
    }

    /// Advances the deepest frame that still has candidates.
    fn backtrack(&mut self) -> bool {
        while let Some(current) = self.frames.pop() {
            let depth = self.frames.len();
            if let Some(next) = self.next_choice(depth, current) {
                self.frames.push(next);
                return true;
            }
        }
        false
    }

    fn fill(&mut self) -> bool {
        let lambda = self.ts.lis_length();
        while self.frames.len() < lambda {
            match self.first_choice(self.frames.len()) {
                Some(frame) => self.frames.push(frame),
                None => {
                    if !self.backtrack() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for LisIter<'_> {
    /// `(value, position)` pairs in increasing order.
    type Item = Vec<(Value, Position)>;

    fn next(&mut self) -> Option<Self::Item> {
        let found = match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                self.fill()
            }
            IterState::Running => self.backtrack() && self.fill(),
        };
        if !found {
            self.state = IterState::Done;
            return None;
        }
        Some(
            self.frames
                .iter()
                .rev()
                .map(|f| (f.value, f.position))
                .collect(),
        )
    }
}
