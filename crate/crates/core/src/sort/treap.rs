use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SortKey;

struct Node {
    key: SortKey,
    priority: u64,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

/// Randomized binary search tree: search-tree order on keys, max-heap order
/// on priorities. Uniform random priorities keep the expected depth
/// logarithmic. Duplicate keys are routed into the left subtree.
pub struct Treap {
    root: Option<Box<Node>>,
    len: usize,
}

impl Treap {
    /// Heap footprint of a single node allocation.
    pub const NODE_BYTES: usize = std::mem::size_of::<Node>();

    pub fn new() -> Self {
        Self { root: None, len: 0 }
    }

    /// Builds a treap over `keys`, drawing one uniform priority per key from
    /// a generator seeded with `rng_seed`.
    pub fn from_keys_seeded(keys: &[SortKey], rng_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut treap = Treap::new();
        for &key in keys {
            treap.insert(key, rng.next_u64());
        }
        treap
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Standard BST leaf insertion followed by rotations that lift the new
    /// node while its priority exceeds its parent's. Ties stay put, so equal
    /// priorities are legal.
    pub fn insert(&mut self, key: SortKey, priority: u64) {
        insert_node(&mut self.root, key, priority);
        self.len += 1;
    }

    /// Deletion by rotation: the first node holding `key` is rotated down,
    /// always lifting its higher-priority child, until it has at most one
    /// child and can be unlinked. Returns false when `key` is absent.
    pub fn remove(&mut self, key: SortKey) -> bool {
        let removed = remove_node(&mut self.root, key);
        if removed {
            self.len -= 1;
        }
        removed
    }

    pub fn contains(&self, key: SortKey) -> bool {
        let mut cur = self.root.as_deref();
        while let Some(node) = cur {
            if key == node.key {
                return true;
            }
            cur = if key < node.key {
                node.left.as_deref()
            } else {
                node.right.as_deref()
            };
        }
        false
    }

    /// Keys in ascending order (iterative in-order traversal).
    pub fn in_order(&self) -> Vec<SortKey> {
        let mut out = Vec::new();
        let mut stack: Vec<&Node> = Vec::new();
        let mut cur = self.root.as_deref();
        while cur.is_some() || !stack.is_empty() {
            while let Some(node) = cur {
                stack.push(node);
                cur = node.left.as_deref();
            }
            let node = stack.pop().expect("loop guard ensures a node");
            out.push(node.key);
            cur = node.right.as_deref();
        }
        out
    }

    /// Full-tree walk checking the BST bound on every key (duplicates left),
    /// the heap order on every priority, and that the node count matches.
    pub fn check_invariants(&self) -> bool {
        let mut count = 0usize;
        let mut stack: Vec<(&Node, Option<SortKey>, Option<SortKey>)> = Vec::new();
        if let Some(root) = self.root.as_deref() {
            stack.push((root, None, None));
        }
        while let Some((node, low, high)) = stack.pop() {
            count += 1;
            // key must lie in (low, high]: left subtrees carry keys <= parent,
            // right subtrees keys strictly greater
            if low.is_some_and(|lo| node.key <= lo) {
                return false;
            }
            if high.is_some_and(|hi| node.key > hi) {
                return false;
            }
            if let Some(left) = node.left.as_deref() {
                if left.priority > node.priority {
                    return false;
                }
                stack.push((left, low, Some(node.key)));
            }
            if let Some(right) = node.right.as_deref() {
                if right.priority > node.priority {
                    return false;
                }
                stack.push((right, Some(node.key), high));
            }
        }
        count == self.len
    }

    /// Mean node depth with the root at depth 0; 0.0 for an empty treap.
    pub fn mean_depth(&self) -> f64 {
        if self.len == 0 {
            return 0.0;
        }
        let mut total = 0u64;
        let mut stack: Vec<(&Node, u64)> = Vec::new();
        if let Some(root) = self.root.as_deref() {
            stack.push((root, 0));
        }
        while let Some((node, depth)) = stack.pop() {
            total += depth;
            if let Some(left) = node.left.as_deref() {
                stack.push((left, depth + 1));
            }
            if let Some(right) = node.right.as_deref() {
                stack.push((right, depth + 1));
            }
        }
        total as f64 / self.len as f64
    }
}

impl Default for Treap {
    fn default() -> Self {
        Self::new()
    }
}

/// Sorts `arr` by inserting every element with a seeded random priority and
/// emitting the in-order traversal.
pub fn treap_sort(arr: &[SortKey], rng_seed: u64) -> Vec<SortKey> {
    Treap::from_keys_seeded(arr, rng_seed).in_order()
}

fn insert_node(slot: &mut Option<Box<Node>>, key: SortKey, priority: u64) {
    match slot {
        None => {
            *slot = Some(Box::new(Node {
                key,
                priority,
                left: None,
                right: None,
            }))
        }
        Some(node) => {
            if key <= node.key {
                insert_node(&mut node.left, key, priority);
                let lift = node.left.as_ref().is_some_and(|l| l.priority > node.priority);
                if lift {
                    rotate_right(slot);
                }
            } else {
                insert_node(&mut node.right, key, priority);
                let lift = node.right.as_ref().is_some_and(|r| r.priority > node.priority);
                if lift {
                    rotate_left(slot);
                }
            }
        }
    }
}

fn remove_node(slot: &mut Option<Box<Node>>, key: SortKey) -> bool {
    let Some(node) = slot.as_deref_mut() else {
        return false;
    };
    if key < node.key {
        return remove_node(&mut node.left, key);
    }
    if key > node.key {
        return remove_node(&mut node.right, key);
    }
    match (node.left.is_some(), node.right.is_some()) {
        (false, false) => *slot = None,
        (true, false) => {
            let mut doomed = slot.take().expect("matched Some above");
            *slot = doomed.left.take();
        }
        (false, true) => {
            let mut doomed = slot.take().expect("matched Some above");
            *slot = doomed.right.take();
        }
        (true, true) => {
            let left_priority = node.left.as_ref().expect("checked").priority;
            let right_priority = node.right.as_ref().expect("checked").priority;
            if left_priority >= right_priority {
                rotate_right(slot);
                let new_root = slot.as_deref_mut().expect("rotation keeps a root");
                remove_node(&mut new_root.right, key);
            } else {
                rotate_left(slot);
                let new_root = slot.as_deref_mut().expect("rotation keeps a root");
                remove_node(&mut new_root.left, key);
            }
        }
    }
    true
}

fn rotate_right(slot: &mut Option<Box<Node>>) {
    let mut node = slot.take().expect("rotate_right on empty slot");
    let mut pivot = node.left.take().expect("rotate_right needs a left child");
    node.left = pivot.right.take();
    pivot.right = Some(node);
    *slot = Some(pivot);
}

fn rotate_left(slot: &mut Option<Box<Node>>) {
    let mut node = slot.take().expect("rotate_left on empty slot");
    let mut pivot = node.right.take().expect("rotate_left needs a right child");
    node.right = pivot.left.take();
    pivot.left = Some(node);
    *slot = Some(pivot);
}
