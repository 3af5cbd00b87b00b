//! Ordered list of LIS entries, keyed by value in strictly decreasing order.
//!
//! Each threshold list of the dynamic LIS structure is one of these. All
//! the traffic of the LIS structure happens at the minimum (right) end:
//! appends push a new minimum, extract-min pops it, and transfers between
//! lists split off and concatenate a run of the smallest keys. The backing
//! store is a 2-3 finger tree, so that work is logarithmic in the length of
//! the moved run rather than in the size of the list.
//!
//! Each entry keeps the increasing list of positions at which its value
//! occurs. Reading the entries left to right and concatenating their
//! position lists gives one globally increasing sequence of positions.

mod finger;

use std::cell::Cell;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use self::finger::{Measured, Monoid, Tree};

/// A number stored in the LIS structure. In string comparison these are
/// 1-based positions in the suffix string.
pub type Value = usize;

/// A position in the (gapped) number list `L`, drawn from a monotone counter.
pub type Position = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("operation requires a non-empty list")]
    Empty,
    #[error("entry handle does not refer to the current state of this list")]
    StaleHandle,
    #[error("concatenation would break key order: {left_min} is smaller than {right_max}")]
    OrderViolation { left_min: Value, right_max: Value },
    #[error("position {position} is not after {last}, the last position of value {value}")]
    PositionOrder {
        value: Value,
        position: Position,
        last: Position,
    },
}

/// A value together with every position at which it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LisEntry {
    value: Value,
    positions: Vec<Position>,
}

impl LisEntry {
    pub fn new(value: Value, position: Position) -> Self {
        LisEntry {
            value,
            positions: vec![position],
        }
    }

    pub fn value(&self) -> Value {
        self.value
    }

    /// Occurrence positions, strictly increasing and never empty.
    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn first_position(&self) -> Position {
        self.positions[0]
    }

    pub fn multiplicity(&self) -> usize {
        self.positions.len()
    }

    fn merge_positions(&mut self, other: Vec<Position>) {
        if self.positions.last() < other.first() {
            self.positions.extend(other);
            return;
        }
        let mine = std::mem::take(&mut self.positions);
        let mut merged = Vec::with_capacity(mine.len() + other.len());
        let (mut a, mut b) = (mine.into_iter().peekable(), other.into_iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x <= y => a.next(),
                (Some(_), Some(_)) => b.next(),
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            let next = next.unwrap();
            if merged.last() != Some(&next) {
                merged.push(next);
            }
        }
        self.positions = merged;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Summary {
    entries: usize,
    min: Value,
}

impl Monoid for Summary {
    fn zero() -> Self {
        Summary {
            entries: 0,
            min: Value::MAX,
        }
    }

    fn combine(self, other: Self) -> Self {
        Summary {
            entries: self.entries + other.entries,
            min: self.min.min(other.min),
        }
    }
}

impl Measured for LisEntry {
    type Measure = Summary;

    fn measure(&self) -> Summary {
        Summary {
            entries: 1,
            min: self.value,
        }
    }
}

/// Refers to one entry of one particular state of an [`OrderedList`].
///
/// Any mutation of the list invalidates every handle taken before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryHandle {
    list: u64,
    version: u64,
    index: usize,
    value: Value,
}

impl EntryHandle {
    pub fn value(&self) -> Value {
        self.value
    }

    /// Number of entries (all with larger keys) to the left of this one.
    pub fn index(&self) -> usize {
        self.index
    }
}

static NEXT_LIST_ID: AtomicU64 = AtomicU64::new(1);

pub struct OrderedList {
    tree: Tree<LisEntry>,
    multiplicity: usize,
    id: u64,
    version: u64,
    work: Cell<u64>,
}

impl Default for OrderedList {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for OrderedList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        self.for_each(|entry| {
            list.entry(&format_args!("{}:{:?}", entry.value, entry.positions));
        });
        list.finish()
    }
}

impl OrderedList {
    pub fn new() -> Self {
        OrderedList {
            tree: Tree::Empty,
            multiplicity: 0,
            id: NEXT_LIST_ID.fetch_add(1, Ordering::Relaxed),
            version: 0,
            work: Cell::new(0),
        }
    }

    /// Builds a list from `(value, position)` pairs given in any order.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Value, Position)>,
    ) -> Result<Self, ListError> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_by_key(|&(_, p)| p);
        let mut list = OrderedList::new();
        for (value, position) in pairs {
            list.insert(value, position)?;
        }
        Ok(list)
    }

    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.tree.measure().entries
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Total number of stored positions, counting duplicates.
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Smallest key; `None` stands for the +∞ sentinel of an empty list.
    pub fn min(&self) -> Option<Value> {
        self.tree.back().map(LisEntry::value)
    }

    pub fn max(&self) -> Option<Value> {
        self.tree.front().map(LisEntry::value)
    }

    pub fn min_entry(&self) -> Option<&LisEntry> {
        self.tree.back()
    }

    /// Inserts one occurrence of `value` at `position`. A present key gets
    /// the position appended to its occurrence list.
    pub fn insert(&mut self, value: Value, position: Position) -> Result<(), ListError> {
        let mut work = 0;
        let result = self.insert_inner(value, position, &mut work);
        self.charge(work);
        result
    }

    fn insert_inner(
        &mut self,
        value: Value,
        position: Position,
        work: &mut u64,
    ) -> Result<(), ListError> {
        match self.min() {
            None => self.tree.push_back(LisEntry::new(value, position), work),
            Some(min) if value < min => self.tree.push_back(LisEntry::new(value, position), work),
            Some(min) if value == min => {
                let entry = self.tree.back_mut().unwrap();
                add_position(entry, position)?;
            }
            Some(_) => {
                // Interior insertion: cut at the first key <= value.
                let tree = std::mem::take(&mut self.tree);
                let (mut left, mut right) = split_before(tree, value, work);
                let mut result = Ok(());
                match right.pop_front(work) {
                    Some(mut entry) if entry.value == value => {
                        result = add_position(&mut entry, position);
                        right.push_front(entry, work);
                    }
                    Some(entry) => {
                        right.push_front(entry, work);
                        left.push_back(LisEntry::new(value, position), work);
                    }
                    None => left.push_back(LisEntry::new(value, position), work),
                }
                left.append(right, work);
                self.tree = left;
                result?;
            }
        }
        self.multiplicity += 1;
        self.version += 1;
        Ok(())
    }

    /// Removes the entry with the smallest key, with all its positions.
    pub fn remove_min(&mut self) -> Result<LisEntry, ListError> {
        let mut work = 0;
        let entry = self.tree.pop_back(&mut work).ok_or(ListError::Empty);
        self.charge(work);
        let entry = entry?;
        self.multiplicity -= entry.multiplicity();
        self.version += 1;
        Ok(entry)
    }

    /// Handle to the entry with the largest key `<= bound`, if any.
    pub fn predecessor(&self, bound: Value) -> Option<EntryHandle> {
        let mut work = 0;
        let found = self
            .tree
            .locate(&|m: Summary| m.min <= bound, Summary::zero(), &mut work)
            .map(|(before, entry)| EntryHandle {
                list: self.id,
                version: self.version,
                index: before.entries,
                value: entry.value,
            });
        self.charge(work);
        found
    }

    /// Reads the entry a handle points to.
    pub fn get(&self, handle: &EntryHandle) -> Result<&LisEntry, ListError> {
        self.check_handle(handle)?;
        self.entry_at(handle.index).ok_or(ListError::StaleHandle)
    }

    /// The entry with `index` larger keys to its left.
    pub fn entry_at(&self, index: usize) -> Option<&LisEntry> {
        let mut work = 0;
        let found = self
            .tree
            .locate(&|m: Summary| m.entries > index, Summary::zero(), &mut work)
            .map(|(_, entry)| entry);
        self.charge(work);
        found
    }

    /// Detaches the handle's entry and every smaller key into a new list;
    /// `self` keeps the keys strictly larger than the handle's.
    pub fn split_at(&mut self, handle: EntryHandle) -> Result<OrderedList, ListError> {
        self.check_handle(&handle)?;
        let mut work = 0;
        let index = handle.index;
        let tree = std::mem::take(&mut self.tree);
        let (left, entry, mut right) =
            tree.split(&|m: Summary| m.entries > index, Summary::zero(), &mut work);
        debug_assert_eq!(entry.value, handle.value);
        right.push_front(entry, &mut work);
        self.tree = left;
        self.charge(work);
        self.version += 1;

        let mut detached = OrderedList::new();
        detached.tree = right;
        detached.multiplicity = detached.count_positions();
        self.multiplicity -= detached.multiplicity;
        Ok(detached)
    }

    /// Appends `detached` at the small-key end. Its largest key must not
    /// exceed this list's smallest; an equal boundary key merges the two
    /// entries' position lists.
    pub fn concatenate(&mut self, mut detached: OrderedList) -> Result<(), ListError> {
        let (Some(left_min), Some(right_max)) = (self.min(), detached.max()) else {
            if self.is_empty() {
                self.multiplicity = detached.multiplicity;
                self.tree = std::mem::take(&mut detached.tree);
                self.version += 1;
            }
            return Ok(());
        };
        if left_min < right_max {
            return Err(ListError::OrderViolation {
                left_min,
                right_max,
            });
        }
        let mut work = 0;
        if left_min == right_max {
            let first = detached.tree.pop_front(&mut work).unwrap();
            self.tree
                .back_mut()
                .unwrap()
                .merge_positions(first.positions);
        }
        self.tree
            .append(std::mem::take(&mut detached.tree), &mut work);
        self.multiplicity += detached.multiplicity;
        self.charge(work);
        self.version += 1;
        Ok(())
    }

    /// Keys from left to right (decreasing).
    pub fn keys(&self) -> Vec<Value> {
        let mut keys = Vec::with_capacity(self.len());
        self.for_each(|e| keys.push(e.value));
        keys
    }

    pub fn entries(&self) -> Vec<&LisEntry> {
        let mut entries = Vec::with_capacity(self.len());
        self.tree.visit(&mut |e| entries.push(e));
        entries
    }

    pub fn for_each<'a>(&'a self, mut f: impl FnMut(&'a LisEntry)) {
        self.tree.visit(&mut f);
    }

    /// Tree nodes touched since the last call.
    pub fn take_work(&self) -> u64 {
        self.work.replace(0)
    }

    /// Full traversal check of the key and position orderings.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut last_key: Option<Value> = None;
        let mut last_position: Option<Position> = None;
        let mut count = 0;
        let mut problem = None;
        self.for_each(|entry| {
            if problem.is_some() {
                return;
            }
            if entry.positions.is_empty() {
                problem = Some(format!("value {} has no positions", entry.value));
            }
            if last_key.is_some_and(|k| k <= entry.value) {
                problem = Some(format!("keys not strictly decreasing at {}", entry.value));
            }
            for &p in &entry.positions {
                if last_position.is_some_and(|q| q >= p) {
                    problem = Some(format!("positions not increasing at {}:{}", entry.value, p));
                }
                last_position = Some(p);
            }
            count += entry.positions.len();
            last_key = Some(entry.value);
        });
        if let Some(problem) = problem {
            return Err(problem);
        }
        if count != self.multiplicity {
            return Err(format!(
                "multiplicity {} but {} positions stored",
                self.multiplicity, count
            ));
        }
        Ok(())
    }

    fn check_handle(&self, handle: &EntryHandle) -> Result<(), ListError> {
        if handle.list != self.id || handle.version != self.version {
            return Err(ListError::StaleHandle);
        }
        Ok(())
    }

    fn count_positions(&self) -> usize {
        let mut total = 0;
        self.for_each(|e| total += e.positions.len());
        total
    }

    fn charge(&self, work: u64) {
        self.work.set(self.work.get() + work);
    }
}

fn add_position(entry: &mut LisEntry, position: Position) -> Result<(), ListError> {
    let last = *entry.positions.last().unwrap();
    if position <= last {
        return Err(ListError::PositionOrder {
            value: entry.value,
            position,
            last,
        });
    }
    entry.positions.push(position);
    Ok(())
}

/// Splits into keys `> value` and keys `<= value`.
fn split_before(
    tree: Tree<LisEntry>,
    value: Value,
    work: &mut u64,
) -> (Tree<LisEntry>, Tree<LisEntry>) {
    let pred = |m: Summary| m.min <= value;
    if tree.is_empty() || !pred(tree.measure()) {
        return (tree, Tree::Empty);
    }
    let (left, entry, mut right) = tree.split(&pred, Summary::zero(), work);
    right.push_front(entry, work);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(values: &[Value]) -> OrderedList {
        let mut l = OrderedList::new();
        for (i, &v) in values.iter().enumerate() {
            l.insert(v, i + 1).unwrap();
        }
        l
    }

    #[test]
    fn min_of_lists() {
        assert_eq!(list(&[8, 2, 1]).min(), Some(1));
        assert_eq!(list(&[]).min(), None);
        assert_eq!(list(&[6, 5, 4, 3]).min(), Some(3));
    }

    #[test]
    fn insert_orders_and_merges() {
        let mut l = list(&[8]);
        l.insert(2, 2).unwrap();
        assert_eq!(l.keys(), vec![8, 2]);
        l.insert(2, 12).unwrap();
        assert_eq!(l.keys(), vec![8, 2]);
        assert_eq!(l.min_entry().unwrap().positions(), &[2, 12]);
        assert_eq!(l.multiplicity(), 3);

        let mut empty = OrderedList::new();
        empty.insert(8, 1).unwrap();
        assert_eq!(empty.keys(), vec![8]);
    }

    #[test]
    fn interior_insert_keeps_order() {
        let mut l = list(&[9, 5, 1]);
        l.insert(7, 10).unwrap();
        l.insert(12, 11).unwrap();
        l.insert(5, 12).unwrap();
        assert_eq!(l.keys(), vec![12, 9, 7, 5, 1]);
        assert_eq!(l.entry_at(3).unwrap().positions(), &[2, 12]);
        assert_eq!(
            l.insert(5, 3),
            Err(ListError::PositionOrder {
                value: 5,
                position: 3,
                last: 12
            })
        );
    }

    #[test]
    fn remove_min_drops_all_occurrences() {
        let mut l = list(&[8, 2, 1]);
        l.remove_min().unwrap();
        assert_eq!(l.keys(), vec![8, 2]);

        let mut single = list(&[8]);
        single.remove_min().unwrap();
        assert!(single.is_empty());
        assert_eq!(single.remove_min(), Err(ListError::Empty));

        let mut dup = list(&[8, 2]);
        dup.insert(2, 12).unwrap();
        let removed = dup.remove_min().unwrap();
        assert_eq!(removed.positions(), &[2, 12]);
        assert_eq!(dup.keys(), vec![8]);
        assert_eq!(dup.multiplicity(), 1);
    }

    #[test]
    fn predecessor_queries() {
        let l = list(&[6, 5, 4]);
        assert_eq!(l.predecessor(5).unwrap().value(), 5);
        assert_eq!(l.predecessor(3), None);
        let l = list(&[8, 2]);
        let h = l.predecessor(7).unwrap();
        assert_eq!((h.value(), h.index()), (2, 1));
        assert_eq!(l.get(&h).unwrap().value(), 2);
        assert_eq!(list(&[6, 5, 4, 3]).predecessor(4).unwrap().value(), 4);
    }

    #[test]
    fn split_at_handle() {
        let mut l = list(&[6, 5, 4, 3]);
        let h = l.predecessor(5).unwrap();
        let detached = l.split_at(h).unwrap();
        assert_eq!(l.keys(), vec![6]);
        assert_eq!(detached.keys(), vec![5, 4, 3]);
        assert_eq!((l.multiplicity(), detached.multiplicity()), (1, 3));

        let mut l = list(&[8]);
        let h = l.predecessor(8).unwrap();
        let detached = l.split_at(h).unwrap();
        assert!(l.is_empty());
        assert_eq!(detached.keys(), vec![8]);

        let mut l = list(&[6, 5, 4]);
        let h = l.predecessor(4).unwrap();
        let detached = l.split_at(h).unwrap();
        assert_eq!(l.keys(), vec![6, 5]);
        assert_eq!(detached.keys(), vec![4]);
    }

    #[test]
    fn stale_handles_are_rejected() {
        let mut l = list(&[6, 5, 4]);
        let h = l.predecessor(5).unwrap();
        l.insert(1, 9).unwrap();
        assert_eq!(l.split_at(h).unwrap_err(), ListError::StaleHandle);

        let other = list(&[6, 5, 4]);
        let h = other.predecessor(5).unwrap();
        assert_eq!(l.split_at(h).unwrap_err(), ListError::StaleHandle);
    }

    #[test]
    fn concatenate_lists() {
        let mut l = list(&[8]);
        l.concatenate(OrderedList::from_pairs([(6, 4), (5, 5), (4, 6), (3, 7)]).unwrap())
            .unwrap();
        assert_eq!(l.keys(), vec![8, 6, 5, 4, 3]);
        l.check_invariants().unwrap();

        let mut empty = OrderedList::new();
        empty.concatenate(list(&[8])).unwrap();
        assert_eq!(empty.keys(), vec![8]);
        assert_eq!(empty.multiplicity(), 1);

        let mut left = OrderedList::from_pairs([(5, 5)]).unwrap();
        left.concatenate(OrderedList::from_pairs([(5, 9)]).unwrap())
            .unwrap();
        assert_eq!(left.keys(), vec![5]);
        assert_eq!(left.min_entry().unwrap().positions(), &[5, 9]);
        assert_eq!(left.multiplicity(), 2);
    }

    #[test]
    fn concatenate_rejects_order_violation() {
        let mut l = list(&[8, 3]);
        let err = l.concatenate(list(&[5])).unwrap_err();
        assert_eq!(
            err,
            ListError::OrderViolation {
                left_min: 3,
                right_max: 5
            }
        );
        assert_eq!(l.keys(), vec![8, 3]);
    }

    #[test]
    fn merge_interleaves_positions() {
        let mut e = LisEntry {
            value: 4,
            positions: vec![1, 5, 9],
        };
        e.merge_positions(vec![2, 5, 10]);
        assert_eq!(e.positions(), &[1, 2, 5, 9, 10]);
    }
}
