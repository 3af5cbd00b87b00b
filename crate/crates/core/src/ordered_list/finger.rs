//! An owned (ephemeral) 2-3 finger tree.
//!
//! Nodes carry their depth implicitly: a tree whose elements are leaves has a
//! middle tree whose elements are branches of leaves, and so on. The node
//! type is uniform so the recursion is monomorphic.
//!
//! Pushing and popping at either end is amortized O(1). Splitting at a
//! position `i` and concatenating cost O(log min(i, n - i)) and
//! O(log min(n1, n2)) respectively, so work near either end stays cheap.
//!
//! Every routine takes a `work` counter and bumps it once per spine level
//! or node it restructures.

use std::mem;

pub(crate) trait Monoid: Copy {
    fn zero() -> Self;
    fn combine(self, other: Self) -> Self;
}

pub(crate) trait Measured {
    type Measure: Monoid;
    fn measure(&self) -> Self::Measure;
}

pub(crate) enum Node<T: Measured> {
    Leaf(T),
    /// Two or three children of the next lower depth.
    Branch(T::Measure, Vec<Node<T>>),
}

impl<T: Measured> Node<T> {
    fn measure(&self) -> T::Measure {
        match self {
            Node::Leaf(value) => value.measure(),
            Node::Branch(measure, _) => *measure,
        }
    }

    fn branch(children: Vec<Node<T>>) -> Self {
        debug_assert!(children.len() == 2 || children.len() == 3);
        Node::Branch(measure_all(&children), children)
    }

    fn into_children(self) -> Vec<Node<T>> {
        match self {
            Node::Branch(_, children) => children,
            Node::Leaf(_) => unreachable!("leaf found below the top level"),
        }
    }

    fn into_leaf(self) -> T {
        match self {
            Node::Leaf(value) => value,
            Node::Branch(..) => unreachable!("branch found at the top level"),
        }
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a T)) {
        match self {
            Node::Leaf(value) => f(value),
            Node::Branch(_, children) => children.iter().for_each(|c| c.visit(f)),
        }
    }
}

fn measure_all<T: Measured>(nodes: &[Node<T>]) -> T::Measure {
    nodes
        .iter()
        .fold(T::Measure::zero(), |acc, n| acc.combine(n.measure()))
}

#[derive(Default)]
pub(crate) enum Tree<T: Measured> {
    #[default]
    Empty,
    Single(Node<T>),
    Deep {
        measure: T::Measure,
        /// One to four nodes, left to right.
        prefix: Vec<Node<T>>,
        middle: Box<Tree<T>>,
        /// One to four nodes, left to right.
        suffix: Vec<Node<T>>,
    },
}

impl<T: Measured> Tree<T> {
    fn deep(prefix: Vec<Node<T>>, middle: Box<Tree<T>>, suffix: Vec<Node<T>>) -> Self {
        debug_assert!((1..=4).contains(&prefix.len()) && (1..=4).contains(&suffix.len()));
        let measure = measure_all(&prefix)
            .combine(middle.measure())
            .combine(measure_all(&suffix));
        Tree::Deep {
            measure,
            prefix,
            middle,
            suffix,
        }
    }

    fn from_nodes(nodes: Vec<Node<T>>, work: &mut u64) -> Self {
        let mut tree = Tree::Empty;
        for node in nodes {
            tree.push_node_back(node, work);
        }
        tree
    }

    /// Rebuilds a deep node whose prefix may have been emptied by a split.
    fn deep_left(
        prefix: Vec<Node<T>>,
        mut middle: Box<Tree<T>>,
        suffix: Vec<Node<T>>,
        work: &mut u64,
    ) -> Self {
        if !prefix.is_empty() {
            return Tree::deep(prefix, middle, suffix);
        }
        match middle.pop_node_front(work) {
            Some(node) => Tree::deep(node.into_children(), middle, suffix),
            None => Tree::from_nodes(suffix, work),
        }
    }

    /// Rebuilds a deep node whose suffix may have been emptied by a split.
    fn deep_right(
        prefix: Vec<Node<T>>,
        mut middle: Box<Tree<T>>,
        suffix: Vec<Node<T>>,
        work: &mut u64,
    ) -> Self {
        if !suffix.is_empty() {
            return Tree::deep(prefix, middle, suffix);
        }
        match middle.pop_node_back(work) {
            Some(node) => Tree::deep(prefix, middle, node.into_children()),
            None => Tree::from_nodes(prefix, work),
        }
    }

    pub(crate) fn measure(&self) -> T::Measure {
        match self {
            Tree::Empty => T::Measure::zero(),
            Tree::Single(node) => node.measure(),
            Tree::Deep { measure, .. } => *measure,
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        matches!(self, Tree::Empty)
    }

    pub(crate) fn push_back(&mut self, value: T, work: &mut u64) {
        self.push_node_back(Node::Leaf(value), work);
    }

    pub(crate) fn push_front(&mut self, value: T, work: &mut u64) {
        self.push_node_front(Node::Leaf(value), work);
    }

    pub(crate) fn pop_back(&mut self, work: &mut u64) -> Option<T> {
        self.pop_node_back(work).map(Node::into_leaf)
    }

    pub(crate) fn pop_front(&mut self, work: &mut u64) -> Option<T> {
        self.pop_node_front(work).map(Node::into_leaf)
    }

    fn push_node_back(&mut self, node: Node<T>, work: &mut u64) {
        *work += 1;
        *self = match mem::take(self) {
            Tree::Empty => Tree::Single(node),
            Tree::Single(first) => Tree::deep(vec![first], Box::default(), vec![node]),
            Tree::Deep {
                prefix,
                mut middle,
                mut suffix,
                ..
            } => {
                if suffix.len() == 4 {
                    let last = suffix.pop().unwrap();
                    middle.push_node_back(Node::branch(suffix), work);
                    suffix = vec![last, node];
                } else {
                    suffix.push(node);
                }
                Tree::deep(prefix, middle, suffix)
            }
        };
    }

    fn push_node_front(&mut self, node: Node<T>, work: &mut u64) {
        *work += 1;
        *self = match mem::take(self) {
            Tree::Empty => Tree::Single(node),
            Tree::Single(last) => Tree::deep(vec![node], Box::default(), vec![last]),
            Tree::Deep {
                mut prefix,
                mut middle,
                suffix,
                ..
            } => {
                if prefix.len() == 4 {
                    let rest = prefix.split_off(1);
                    middle.push_node_front(Node::branch(rest), work);
                    prefix.insert(0, node);
                } else {
                    prefix.insert(0, node);
                }
                Tree::deep(prefix, middle, suffix)
            }
        };
    }

    fn pop_node_back(&mut self, work: &mut u64) -> Option<Node<T>> {
        *work += 1;
        match mem::take(self) {
            Tree::Empty => None,
            Tree::Single(node) => Some(node),
            Tree::Deep {
                mut prefix,
                mut middle,
                mut suffix,
                ..
            } => {
                let last = suffix.pop().unwrap();
                if suffix.is_empty() {
                    match middle.pop_node_back(work) {
                        Some(node) => suffix = node.into_children(),
                        None if prefix.len() == 1 => {
                            *self = Tree::Single(prefix.pop().unwrap());
                            return Some(last);
                        }
                        None => suffix.push(prefix.pop().unwrap()),
                    }
                }
                *self = Tree::deep(prefix, middle, suffix);
                Some(last)
            }
        }
    }

    fn pop_node_front(&mut self, work: &mut u64) -> Option<Node<T>> {
        *work += 1;
        match mem::take(self) {
            Tree::Empty => None,
            Tree::Single(node) => Some(node),
            Tree::Deep {
                mut prefix,
                mut middle,
                mut suffix,
                ..
            } => {
                let first = prefix.remove(0);
                if prefix.is_empty() {
                    match middle.pop_node_front(work) {
                        Some(node) => prefix = node.into_children(),
                        None if suffix.len() == 1 => {
                            *self = Tree::Single(suffix.pop().unwrap());
                            return Some(first);
                        }
                        None => prefix.push(suffix.remove(0)),
                    }
                }
                *self = Tree::deep(prefix, middle, suffix);
                Some(first)
            }
        }
    }

    /// Appends `other` to the right of `self`.
    pub(crate) fn append(&mut self, other: Tree<T>, work: &mut u64) {
        let left = mem::take(self);
        *self = Tree::concat3(left, Vec::new(), other, work);
    }

    fn concat3(left: Tree<T>, mid: Vec<Node<T>>, right: Tree<T>, work: &mut u64) -> Tree<T> {
        *work += 1;
        match (left, right) {
            (Tree::Empty, mut right) => {
                for node in mid.into_iter().rev() {
                    right.push_node_front(node, work);
                }
                right
            }
            (mut left, Tree::Empty) => {
                for node in mid {
                    left.push_node_back(node, work);
                }
                left
            }
            (Tree::Single(first), mut right) => {
                for node in mid.into_iter().rev() {
                    right.push_node_front(node, work);
                }
                right.push_node_front(first, work);
                right
            }
            (mut left, Tree::Single(last)) => {
                for node in mid {
                    left.push_node_back(node, work);
                }
                left.push_node_back(last, work);
                left
            }
            (
                Tree::Deep {
                    prefix: left_prefix,
                    middle: left_middle,
                    suffix: left_suffix,
                    ..
                },
                Tree::Deep {
                    prefix: right_prefix,
                    middle: right_middle,
                    suffix: right_suffix,
                    ..
                },
            ) => {
                let mut glue = left_suffix;
                glue.extend(mid);
                glue.extend(right_prefix);
                let middle = Tree::concat3(*left_middle, pack(glue, work), *right_middle, work);
                Tree::deep(left_prefix, Box::new(middle), right_suffix)
            }
        }
    }

    /// Splits into `(left, x, right)` where `x` is the first element at
    /// which `pred(acc ⊕ measure(left) ⊕ measure(x))` holds. The predicate
    /// must be monotone and must hold on `acc ⊕ measure(self)`.
    pub(crate) fn split<P>(self, pred: &P, acc: T::Measure, work: &mut u64) -> (Tree<T>, T, Tree<T>)
    where
        P: Fn(T::Measure) -> bool,
    {
        let (left, node, right) = self.split_nodes(pred, acc, work);
        (left, node.into_leaf(), right)
    }

    fn split_nodes<P>(
        self,
        pred: &P,
        acc: T::Measure,
        work: &mut u64,
    ) -> (Tree<T>, Node<T>, Tree<T>)
    where
        P: Fn(T::Measure) -> bool,
    {
        *work += 1;
        match self {
            Tree::Empty => panic!("split of an empty finger tree"),
            Tree::Single(node) => (Tree::Empty, node, Tree::Empty),
            Tree::Deep {
                prefix,
                middle,
                suffix,
                ..
            } => {
                let after_prefix = acc.combine(measure_all(&prefix));
                if pred(after_prefix) {
                    let (l, x, r) = split_digit(pred, acc, prefix);
                    return (
                        Tree::from_nodes(l, work),
                        x,
                        Tree::deep_left(r, middle, suffix, work),
                    );
                }
                let after_middle = after_prefix.combine(middle.measure());
                if pred(after_middle) {
                    let (ml, xs, mr) = middle.split_nodes(pred, after_prefix, work);
                    let before = after_prefix.combine(ml.measure());
                    let (l, x, r) = split_digit(pred, before, xs.into_children());
                    return (
                        Tree::deep_right(prefix, Box::new(ml), l, work),
                        x,
                        Tree::deep_left(r, Box::new(mr), suffix, work),
                    );
                }
                let (l, x, r) = split_digit(pred, after_middle, suffix);
                (
                    Tree::deep_right(prefix, middle, l, work),
                    x,
                    Tree::from_nodes(r, work),
                )
            }
        }
    }

    /// Finds the first element at which the accumulated measure satisfies
    /// `pred`, without restructuring. Returns the measure of everything to
    /// its left together with the element.
    pub(crate) fn locate<P>(
        &self,
        pred: &P,
        acc: T::Measure,
        work: &mut u64,
    ) -> Option<(T::Measure, &T)>
    where
        P: Fn(T::Measure) -> bool,
    {
        if self.is_empty() || !pred(acc.combine(self.measure())) {
            return None;
        }
        let (before, node) = self.locate_node(pred, acc, work);
        match node {
            Node::Leaf(value) => Some((before, value)),
            Node::Branch(..) => unreachable!("branch found at the top level"),
        }
    }

    fn locate_node<P>(&self, pred: &P, acc: T::Measure, work: &mut u64) -> (T::Measure, &Node<T>)
    where
        P: Fn(T::Measure) -> bool,
    {
        *work += 1;
        match self {
            Tree::Empty => panic!("locate in an empty finger tree"),
            Tree::Single(node) => (acc, node),
            Tree::Deep {
                prefix,
                middle,
                suffix,
                ..
            } => {
                let after_prefix = acc.combine(measure_all(prefix));
                if pred(after_prefix) {
                    return pick(pred, acc, prefix);
                }
                let after_middle = after_prefix.combine(middle.measure());
                if pred(after_middle) {
                    let (before, branch) = middle.locate_node(pred, after_prefix, work);
                    match branch {
                        Node::Branch(_, children) => return pick(pred, before, children),
                        Node::Leaf(_) => unreachable!("leaf found below the top level"),
                    }
                }
                pick(pred, after_middle, suffix)
            }
        }
    }

    /// Mutable access to the rightmost element. Callers must not change
    /// anything that contributes to its measure.
    pub(crate) fn back_mut(&mut self) -> Option<&mut T> {
        let mut node = match self {
            Tree::Empty => return None,
            Tree::Single(node) => node,
            Tree::Deep { suffix, .. } => suffix.last_mut().unwrap(),
        };
        loop {
            match node {
                Node::Leaf(value) => return Some(value),
                Node::Branch(_, children) => node = children.last_mut().unwrap(),
            }
        }
    }

    pub(crate) fn front(&self) -> Option<&T> {
        let mut node = match self {
            Tree::Empty => return None,
            Tree::Single(node) => node,
            Tree::Deep { prefix, .. } => &prefix[0],
        };
        loop {
            match node {
                Node::Leaf(value) => return Some(value),
                Node::Branch(_, children) => node = &children[0],
            }
        }
    }

    pub(crate) fn back(&self) -> Option<&T> {
        let mut node = match self {
            Tree::Empty => return None,
            Tree::Single(node) => node,
            Tree::Deep { suffix, .. } => suffix.last().unwrap(),
        };
        loop {
            match node {
                Node::Leaf(value) => return Some(value),
                Node::Branch(_, children) => node = children.last().unwrap(),
            }
        }
    }

    /// In-order traversal.
    pub(crate) fn visit<'a>(&'a self, f: &mut impl FnMut(&'a T)) {
        match self {
            Tree::Empty => {}
            Tree::Single(node) => node.visit(f),
            Tree::Deep {
                prefix,
                middle,
                suffix,
                ..
            } => {
                prefix.iter().for_each(|n| n.visit(f));
                middle.visit(f);
                suffix.iter().for_each(|n| n.visit(f));
            }
        }
    }
}

fn pick<'a, T: Measured, P>(
    pred: &P,
    mut acc: T::Measure,
    nodes: &'a [Node<T>],
) -> (T::Measure, &'a Node<T>)
where
    P: Fn(T::Measure) -> bool,
{
    let (last, init) = nodes.split_last().expect("digit is never empty");
    for node in init {
        let next = acc.combine(node.measure());
        if pred(next) {
            return (acc, node);
        }
        acc = next;
    }
    (acc, last)
}

fn split_digit<T: Measured, P>(
    pred: &P,
    mut acc: T::Measure,
    mut nodes: Vec<Node<T>>,
) -> (Vec<Node<T>>, Node<T>, Vec<Node<T>>)
where
    P: Fn(T::Measure) -> bool,
{
    let mut at = nodes.len() - 1;
    for (i, node) in nodes.iter().enumerate().take(nodes.len() - 1) {
        acc = acc.combine(node.measure());
        if pred(acc) {
            at = i;
            break;
        }
    }
    let right = nodes.split_off(at + 1);
    let x = nodes.pop().unwrap();
    (nodes, x, right)
}

/// Groups 2..=12 nodes into branches of two or three.
fn pack<T: Measured>(mut nodes: Vec<Node<T>>, work: &mut u64) -> Vec<Node<T>> {
    let mut packed = Vec::with_capacity(nodes.len() / 2 + 1);
    let mut rest = nodes.drain(..);
    let mut remaining = rest.len();
    while remaining > 0 {
        *work += 1;
        let take = match remaining {
            2 | 4 => 2,
            _ => 3,
        };
        let group: Vec<Node<T>> = rest.by_ref().take(take).collect();
        packed.push(Node::branch(group));
        remaining -= take;
    }
    packed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Copy, Debug, PartialEq)]
    pub(crate) struct Count(usize);

    impl Monoid for Count {
        fn zero() -> Self {
            Count(0)
        }
        fn combine(self, other: Self) -> Self {
            Count(self.0 + other.0)
        }
    }

    impl Measured for u32 {
        type Measure = Count;
        fn measure(&self) -> Count {
            Count(1)
        }
    }

    fn items(tree: &Tree<u32>) -> Vec<u32> {
        let mut out = Vec::new();
        tree.visit(&mut |v| out.push(*v));
        out
    }

    fn build(range: std::ops::Range<u32>) -> Tree<u32> {
        let mut work = 0;
        let mut tree = Tree::Empty;
        for v in range {
            tree.push_back(v, &mut work);
        }
        tree
    }

    #[test]
    fn deque_operations_keep_order() {
        let mut work = 0;
        let mut tree = build(0..100);
        assert_eq!(items(&tree), (0..100).collect::<Vec<_>>());
        assert_eq!(tree.measure(), Count(100));
        for v in (0..100).rev() {
            assert_eq!(tree.pop_back(&mut work), Some(v));
        }
        assert!(tree.is_empty());
        for v in 0..50 {
            tree.push_front(v, &mut work);
        }
        for v in (0..50).rev() {
            assert_eq!(tree.pop_front(&mut work), Some(v));
        }
        assert_eq!(tree.pop_front(&mut work), None);
    }

    #[test]
    fn split_and_append_at_every_index() {
        for n in 1..60u32 {
            for i in 0..n as usize {
                let mut work = 0;
                let tree = build(0..n);
                let (mut left, x, right) = tree.split(&|m: Count| m.0 > i, Count(0), &mut work);
                assert_eq!(x as usize, i);
                assert_eq!(left.measure(), Count(i));
                assert_eq!(items(&right), (i as u32 + 1..n).collect::<Vec<_>>());
                let whole = build(0..n);
                let (before, found) = whole
                    .locate(&|m: Count| m.0 > i, Count(0), &mut work)
                    .unwrap();
                assert_eq!((before.0, *found as usize), (i, i));
                left.push_back(x, &mut work);
                left.append(right, &mut work);
                assert_eq!(items(&left), (0..n).collect::<Vec<_>>());
                assert_eq!(left.measure(), Count(n as usize));
            }
        }
    }

    #[test]
    fn append_trees_of_mixed_sizes() {
        for a in 0..40u32 {
            for b in 0..40u32 {
                let mut work = 0;
                let mut left = build(0..a);
                left.append(build(a..a + b), &mut work);
                assert_eq!(items(&left), (0..a + b).collect::<Vec<_>>());
                assert_eq!(left.back().copied(), (a + b).checked_sub(1));
                assert_eq!(
                    left.front().copied(),
                    if a + b > 0 { Some(0) } else { None }
                );
            }
        }
    }

    #[test]
    fn split_near_the_end_is_cheap() {
        let tree = build(0..100_000);
        let mut work = 0;
        let (_, x, _) = tree.split(&|m: Count| m.0 > 99_998, Count(0), &mut work);
        assert_eq!(x, 99_998);
        assert!(work < 64, "work {work}");
    }
}
