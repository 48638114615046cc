//! Dynamic order statistics over `(value, index)` pairs.
//!
//! [`OrderStatTree`] is an AVL tree stored in an arena, with every node
//! carrying the cardinality of its subtree. Elements are ordered by value
//! first and by index second, so equal values never collide: the element
//! that arrived earlier is the smaller one.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A value tagged with its 1-based position in the sequence it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element<T> {
    pub value: T,
    pub index: usize,
}

impl<T> Element<T> {
    pub fn new(value: T, index: usize) -> Self {
        Element { value, index }
    }
}

impl<T: Ord> PartialOrd for Element<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Element<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.index.cmp(&other.index))
    }
}

/// Either a concrete 1-based index or one of the two virtual positions whose
/// characters are `-inf` and `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexOrSentinel {
    NegInfinity,
    Index(usize),
    PosInfinity,
}

impl IndexOrSentinel {
    pub fn index(self) -> Option<usize> {
        match self {
            IndexOrSentinel::Index(i) => Some(i),
            _ => None,
        }
    }

    /// Moves a concrete index by `base - 1`, mapping a pattern-relative
    /// position onto the text window that starts at `base`.
    pub fn shifted(self, base: usize) -> Self {
        match self {
            IndexOrSentinel::Index(i) => IndexOrSentinel::Index(base + i - 1),
            s => s,
        }
    }
}

impl fmt::Display for IndexOrSentinel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexOrSentinel::NegInfinity => f.write_str("-inf"),
            IndexOrSentinel::Index(i) => write!(f, "{i}"),
            IndexOrSentinel::PosInfinity => f.write_str("inf"),
        }
    }
}

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node<T> {
    key: Element<T>,
    left: u32,
    right: u32,
    height: u8,
    size: u32,
}

/// Balanced ordered multiset of [`Element`]s with rank and neighbor queries.
///
/// Every operation runs in `O(log n)`. The number of nodes touched by the
/// most recent operation is available from [`OrderStatTree::last_visits`].
#[derive(Clone)]
pub struct OrderStatTree<T> {
    nodes: Vec<Node<T>>,
    free: Vec<u32>,
    root: u32,
    visits: Cell<usize>,
}

impl<T> Default for OrderStatTree<T> {
    fn default() -> Self {
        OrderStatTree {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            visits: Cell::new(0),
        }
    }
}

impl<T: Ord + Copy + fmt::Debug> fmt::Debug for OrderStatTree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<T: Ord + Copy> OrderStatTree<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.size_of(self.root)
    }

    pub fn is_empty(&self) -> bool {
        self.root == NIL
    }

    /// Number of nodes visited by the last operation.
    pub fn last_visits(&self) -> usize {
        self.visits.get()
    }

    pub fn height(&self) -> usize {
        self.height_of(self.root) as usize
    }

    pub fn clear(&mut self) {
        self.nodes.clear();
        self.free.clear();
        self.root = NIL;
    }

    /// Inserts `(value, index)`. Fails if the exact pair is already stored.
    pub fn insert(&mut self, value: T, index: usize) -> Result<()> {
        self.visits.set(0);
        let key = Element::new(value, index);
        self.root = self.insert_at(self.root, key)?;
        Ok(())
    }

    /// Removes `(value, index)`. Fails if the pair is not stored.
    pub fn delete(&mut self, value: T, index: usize) -> Result<()> {
        self.visits.set(0);
        let key = Element::new(value, index);
        self.root = self.delete_at(self.root, &key)?;
        Ok(())
    }

    pub fn contains(&self, value: T, index: usize) -> bool {
        let key = Element::new(value, index);
        let mut cur = self.root;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            match key.cmp(&node.key) {
                Ordering::Less => cur = node.left,
                Ordering::Greater => cur = node.right,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// `1 +` the number of stored elements strictly smaller than the query.
    pub fn rank(&self, value: T, index: usize) -> usize {
        let key = Element::new(value, index);
        let mut visits = 0;
        let mut smaller = 0;
        let mut cur = self.root;
        while cur != NIL {
            visits += 1;
            let node = &self.nodes[cur as usize];
            match key.cmp(&node.key) {
                Ordering::Less => cur = node.left,
                Ordering::Greater => {
                    smaller += self.size_of(node.left) + 1;
                    cur = node.right;
                }
                Ordering::Equal => {
                    smaller += self.size_of(node.left);
                    break;
                }
            }
        }
        self.visits.set(visits);
        smaller + 1
    }

    /// Index of the largest stored element below the query, or
    /// [`IndexOrSentinel::NegInfinity`] if there is none.
    pub fn find_prev_index(&self, value: T, index: usize) -> IndexOrSentinel {
        let key = Element::new(value, index);
        let mut visits = 0;
        let mut best = IndexOrSentinel::NegInfinity;
        let mut cur = self.root;
        while cur != NIL {
            visits += 1;
            let node = &self.nodes[cur as usize];
            if node.key < key {
                best = IndexOrSentinel::Index(node.key.index);
                cur = node.right;
            } else {
                cur = node.left;
            }
        }
        self.visits.set(visits);
        best
    }

    /// Index of the smallest stored element above the query, or
    /// [`IndexOrSentinel::PosInfinity`] if there is none.
    pub fn find_next_index(&self, value: T, index: usize) -> IndexOrSentinel {
        let key = Element::new(value, index);
        let mut visits = 0;
        let mut best = IndexOrSentinel::PosInfinity;
        let mut cur = self.root;
        while cur != NIL {
            visits += 1;
            let node = &self.nodes[cur as usize];
            if node.key > key {
                best = IndexOrSentinel::Index(node.key.index);
                cur = node.left;
            } else {
                cur = node.right;
            }
        }
        self.visits.set(visits);
        best
    }

    /// In-order traversal.
    pub fn iter(&self) -> Iter<'_, T> {
        let mut it = Iter {
            tree: self,
            stack: Vec::new(),
        };
        it.push_left(self.root);
        it
    }

    fn size_of(&self, id: u32) -> usize {
        if id == NIL {
            0
        } else {
            self.nodes[id as usize].size as usize
        }
    }

    fn height_of(&self, id: u32) -> u8 {
        if id == NIL {
            0
        } else {
            self.nodes[id as usize].height
        }
    }

    fn alloc(&mut self, key: Element<T>) -> u32 {
        let node = Node {
            key,
            left: NIL,
            right: NIL,
            height: 1,
            size: 1,
        };
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn update(&mut self, id: u32) {
        let (l, r) = {
            let n = &self.nodes[id as usize];
            (n.left, n.right)
        };
        let height = 1 + self.height_of(l).max(self.height_of(r));
        let size = 1 + self.size_of(l) + self.size_of(r);
        let n = &mut self.nodes[id as usize];
        n.height = height;
        n.size = size as u32;
    }

    fn rotate_right(&mut self, id: u32) -> u32 {
        let pivot = self.nodes[id as usize].left;
        self.nodes[id as usize].left = self.nodes[pivot as usize].right;
        self.nodes[pivot as usize].right = id;
        self.update(id);
        self.update(pivot);
        pivot
    }

    fn rotate_left(&mut self, id: u32) -> u32 {
        let pivot = self.nodes[id as usize].right;
        self.nodes[id as usize].right = self.nodes[pivot as usize].left;
        self.nodes[pivot as usize].left = id;
        self.update(id);
        self.update(pivot);
        pivot
    }

    fn balance_factor(&self, id: u32) -> i16 {
        let n = &self.nodes[id as usize];
        self.height_of(n.left) as i16 - self.height_of(n.right) as i16
    }

    fn rebalance(&mut self, id: u32) -> u32 {
        self.update(id);
        let bf = self.balance_factor(id);
        if bf > 1 {
            let left = self.nodes[id as usize].left;
            if self.balance_factor(left) < 0 {
                self.nodes[id as usize].left = self.rotate_left(left);
            }
            self.rotate_right(id)
        } else if bf < -1 {
            let right = self.nodes[id as usize].right;
            if self.balance_factor(right) > 0 {
                self.nodes[id as usize].right = self.rotate_right(right);
            }
            self.rotate_left(id)
        } else {
            id
        }
    }

    fn bump(&self) {
        self.visits.set(self.visits.get() + 1);
    }

    fn insert_at(&mut self, id: u32, key: Element<T>) -> Result<u32> {
        if id == NIL {
            return Ok(self.alloc(key));
        }
        self.bump();
        match key.cmp(&self.nodes[id as usize].key) {
            Ordering::Less => {
                let left = self.nodes[id as usize].left;
                let child = self.insert_at(left, key)?;
                self.nodes[id as usize].left = child;
            }
            Ordering::Greater => {
                let right = self.nodes[id as usize].right;
                let child = self.insert_at(right, key)?;
                self.nodes[id as usize].right = child;
            }
            Ordering::Equal => return Err(Error::DuplicateElement { index: key.index }),
        }
        Ok(self.rebalance(id))
    }

    fn delete_at(&mut self, id: u32, key: &Element<T>) -> Result<u32> {
        if id == NIL {
            return Err(Error::MissingElement { index: key.index });
        }
        self.bump();
        match key.cmp(&self.nodes[id as usize].key) {
            Ordering::Less => {
                let left = self.nodes[id as usize].left;
                let child = self.delete_at(left, key)?;
                self.nodes[id as usize].left = child;
            }
            Ordering::Greater => {
                let right = self.nodes[id as usize].right;
                let child = self.delete_at(right, key)?;
                self.nodes[id as usize].right = child;
            }
            Ordering::Equal => {
                let (left, right) = {
                    let n = &self.nodes[id as usize];
                    (n.left, n.right)
                };
                if left == NIL || right == NIL {
                    self.free.push(id);
                    return Ok(if left == NIL { right } else { left });
                }
                let (rest, min) = self.take_min(right);
                let n = &mut self.nodes[min as usize];
                n.left = left;
                n.right = rest;
                self.free.push(id);
                return Ok(self.rebalance(min));
            }
        }
        Ok(self.rebalance(id))
    }

    /// Detaches the minimum node of the subtree; returns (new subtree, node).
    fn take_min(&mut self, id: u32) -> (u32, u32) {
        self.bump();
        let left = self.nodes[id as usize].left;
        if left == NIL {
            return (self.nodes[id as usize].right, id);
        }
        let (rest, min) = self.take_min(left);
        self.nodes[id as usize].left = rest;
        (self.rebalance(id), min)
    }
}

pub struct Iter<'a, T> {
    tree: &'a OrderStatTree<T>,
    stack: Vec<u32>,
}

impl<T> Iter<'_, T> {
    fn push_left(&mut self, mut id: u32) {
        while id != NIL {
            self.stack.push(id);
            id = self.tree.nodes[id as usize].left;
        }
    }
}

impl<'a, T> Iterator for Iter<'a, T> {
    type Item = &'a Element<T>;

    fn next(&mut self) -> Option<Self::Item> {
        let id = self.stack.pop()?;
        let node = &self.tree.nodes[id as usize];
        self.push_left(node.right);
        Some(&node.key)
    }
}
