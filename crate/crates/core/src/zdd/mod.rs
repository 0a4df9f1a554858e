//! Zero-suppressed decision diagram kernel.
//!
//! A [`ZddStore`] owns every node of every diagram built in it. Nodes are
//! hash-consed through a unique table, so two [`NodeRef`]s are equal exactly
//! when they denote the same family of sets. Variables are the integers
//! `1..=n`; smaller labels sit closer to the root and both terminals behave as
//! if they carried the label `+∞`.
//!
//! Terminal semantics:
//! - [`NodeRef::BOTTOM`] (⊥) is the empty family.
//! - [`NodeRef::TOP`] (⊤) is the family `{∅}`.

mod compact;
mod query;

use rustc_hash::FxHashMap;
use thiserror::Error;

pub use query::{scientific, Objective};

/// Label used for terminals: after every real variable.
pub(crate) const TERMINAL_LABEL: u32 = u32::MAX;

/// Handle to a canonical node inside a [`ZddStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef(u32);

impl NodeRef {
    /// The empty family.
    pub const BOTTOM: NodeRef = NodeRef(0);
    /// The family containing only the empty set.
    pub const TOP: NodeRef = NodeRef(1);

    #[inline]
    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    #[inline]
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }

    /// Raw position in the node table; stable until the store is compacted.
    pub fn id(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Node {
    pub var: u32,
    pub lo: NodeRef,
    pub hi: NodeRef,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZddError {
    #[error("variable {var} is outside the universe 1..={universe}")]
    VariableOutOfRange { var: u32, universe: u32 },
    #[error("node ordering violated: label {var} must precede child labels {lo_label} and {hi_label}")]
    OrderViolation { var: u32, lo_label: u32, hi_label: u32 },
    #[error("node reference {0} does not belong to this store")]
    UnknownNode(u32),
    #[error("set is not strictly increasing: {0:?}")]
    UnsortedSet(Vec<u32>),
    #[error("operation requires a non-empty family")]
    EmptyFamily,
    #[error("family has more than {bound} members")]
    TooLarge { bound: usize },
    #[error("weight vector has {got} entries, universe has {universe}")]
    WeightLength { got: usize, universe: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum BinOp {
    Union,
    Intersect,
    Difference,
    NotSubsumed,
    NotSuperset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum UnOp {
    Maximal,
    Minimal,
    Without,
    With,
}

/// Node table, unique table and operation caches for one universe.
///
/// A store is meant to be used from one thread at a time; it is `Send` so a
/// whole store can move between threads.
#[derive(Debug, Clone)]
pub struct ZddStore {
    universe: u32,
    nodes: Vec<Node>,
    unique: FxHashMap<Node, NodeRef>,
    binary_cache: FxHashMap<(BinOp, NodeRef, NodeRef), NodeRef>,
    unary_cache: FxHashMap<(UnOp, NodeRef, u32), NodeRef>,
    peak: usize,
}

/// Empties `map`, releasing its table when it is far larger than what was
/// last used; clearing touches every slot of the capacity.
fn clear_map<K, V>(map: &mut FxHashMap<K, V>) {
    let used = map.len();
    if map.capacity() > 4 * used + 1024 {
        *map = FxHashMap::with_capacity_and_hasher(used, Default::default());
    } else {
        map.clear();
    }
}

impl ZddStore {
    /// Creates a store over the universe `{1, ..., universe}`.
    pub fn new(universe: u32) -> Self {
        assert!(universe < TERMINAL_LABEL, "universe too large");
        let terminal = Node { var: TERMINAL_LABEL, lo: NodeRef::BOTTOM, hi: NodeRef::BOTTOM };
        ZddStore {
            universe,
            nodes: vec![terminal, terminal],
            unique: FxHashMap::default(),
            binary_cache: FxHashMap::default(),
            unary_cache: FxHashMap::default(),
            peak: 2,
        }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Number of allocated nodes, terminals included.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Largest node-table size seen since creation.
    pub fn peak_len(&self) -> usize {
        self.peak
    }

    /// Drops every memoized operation result. Results are recomputable, so
    /// this only costs time.
    pub fn clear_caches(&mut self) {
        clear_map(&mut self.binary_cache);
        clear_map(&mut self.unary_cache);
    }

    #[inline]
    pub(crate) fn node_at(&self, r: NodeRef) -> Node {
        self.nodes[r.index()]
    }

    /// Label of `r`, or `None` for terminals.
    pub fn label(&self, r: NodeRef) -> Option<u32> {
        (!r.is_terminal()).then(|| self.nodes[r.index()].var)
    }

    #[inline]
    pub(crate) fn var(&self, r: NodeRef) -> u32 {
        self.nodes[r.index()].var
    }

    /// `(label, lo, hi)` of a non-terminal node.
    pub fn node(&self, r: NodeRef) -> Option<(u32, NodeRef, NodeRef)> {
        if r.is_terminal() || r.index() >= self.nodes.len() {
            return None;
        }
        let n = self.nodes[r.index()];
        Some((n.var, n.lo, n.hi))
    }

    /// 0-child. Terminals have no children and return ⊥.
    pub fn lo(&self, r: NodeRef) -> NodeRef {
        if r.is_terminal() {
            NodeRef::BOTTOM
        } else {
            self.nodes[r.index()].lo
        }
    }

    /// 1-child. Terminals have no children and return ⊥.
    pub fn hi(&self, r: NodeRef) -> NodeRef {
        if r.is_terminal() {
            NodeRef::BOTTOM
        } else {
            self.nodes[r.index()].hi
        }
    }

    /// Canonical node constructor with zero-suppression, unchecked.
    #[inline]
    pub(crate) fn mk(&mut self, var: u32, lo: NodeRef, hi: NodeRef) -> NodeRef {
        if hi == NodeRef::BOTTOM {
            return lo;
        }
        debug_assert!(var < self.var(lo) && var < self.var(hi), "order violation at {var}");
        let key = Node { var, lo, hi };
        if let Some(&r) = self.unique.get(&key) {
            return r;
        }
        let r = NodeRef(self.nodes.len() as u32);
        self.nodes.push(key);
        self.unique.insert(key, r);
        if self.nodes.len() > self.peak {
            self.peak = self.nodes.len();
        }
        r
    }

    fn check_ref(&self, r: NodeRef) -> Result<(), ZddError> {
        if r.index() < self.nodes.len() {
            Ok(())
        } else {
            Err(ZddError::UnknownNode(r.0))
        }
    }

    fn check_var(&self, var: u32) -> Result<(), ZddError> {
        if var == 0 || var > self.universe {
            Err(ZddError::VariableOutOfRange { var, universe: self.universe })
        } else {
            Ok(())
        }
    }

    /// Returns the canonical node `(var, lo, hi)`; `lo` itself when `hi` is ⊥.
    pub fn make_node(&mut self, var: u32, lo: NodeRef, hi: NodeRef) -> Result<NodeRef, ZddError> {
        self.check_var(var)?;
        self.check_ref(lo)?;
        self.check_ref(hi)?;
        let (lo_label, hi_label) = (self.var(lo), self.var(hi));
        if var >= lo_label || var >= hi_label {
            return Err(ZddError::OrderViolation { var, lo_label, hi_label });
        }
        Ok(self.mk(var, lo, hi))
    }

    /// Family `{set}`. The set must be strictly increasing and inside the universe.
    pub fn singleton(&mut self, set: &[u32]) -> Result<NodeRef, ZddError> {
        self.check_set(set)?;
        let mut r = NodeRef::TOP;
        for &x in set.iter().rev() {
            r = self.mk(x, NodeRef::BOTTOM, r);
        }
        Ok(r)
    }

    /// Family holding exactly the given sets, in any order.
    pub fn from_sets<S: AsRef<[u32]>>(&mut self, sets: &[S]) -> Result<NodeRef, ZddError> {
        let mut acc = NodeRef::BOTTOM;
        for s in sets {
            let one = self.singleton(s.as_ref())?;
            acc = self.union(acc, one);
        }
        Ok(acc)
    }

    pub(crate) fn check_set(&self, set: &[u32]) -> Result<(), ZddError> {
        for w in set.windows(2) {
            if w[0] >= w[1] {
                return Err(ZddError::UnsortedSet(set.to_vec()));
            }
        }
        for &x in set {
            self.check_var(x)?;
        }
        Ok(())
    }

    /// Power set of `{from, ..., n}`.
    pub(crate) fn power_set_from(&mut self, from: u32) -> NodeRef {
        let mut r = NodeRef::TOP;
        let mut v = self.universe;
        while v >= from.max(1) {
            r = self.mk(v, r, r);
            v -= 1;
        }
        r
    }

    /// Every subset of the universe.
    pub fn power_set(&mut self) -> NodeRef {
        self.power_set_from(1)
    }

    /// `{ X ⊆ U : |X| ≥ k }`, built with `O(n·k)` nodes.
    pub fn at_least(&mut self, k: u32) -> NodeRef {
        let n = self.universe;
        if k > n {
            return NodeRef::BOTTOM;
        }
        // need[j] = family over the remaining suffix requiring at least j more elements
        let mut need = vec![NodeRef::BOTTOM; k as usize + 1];
        need[0] = NodeRef::TOP;
        for v in (1..=n).rev() {
            for j in (0..=k as usize).rev() {
                let hi = need[j.saturating_sub(1)];
                need[j] = self.mk(v, need[j], hi);
            }
        }
        need[k as usize]
    }

    pub fn equal(&self, a: NodeRef, b: NodeRef) -> bool {
        a == b
    }

    pub fn is_empty(&self, a: NodeRef) -> bool {
        a == NodeRef::BOTTOM
    }

    pub fn union(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        if a == NodeRef::BOTTOM || a == b {
            return b;
        }
        if b == NodeRef::BOTTOM {
            return a;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let key = (BinOp::Union, a, b);
        if let Some(&r) = self.binary_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.node_at(a), self.node_at(b));
        let r = if na.var < nb.var {
            let lo = self.union(na.lo, b);
            self.mk(na.var, lo, na.hi)
        } else if nb.var < na.var {
            let lo = self.union(a, nb.lo);
            self.mk(nb.var, lo, nb.hi)
        } else {
            let lo = self.union(na.lo, nb.lo);
            let hi = self.union(na.hi, nb.hi);
            self.mk(na.var, lo, hi)
        };
        self.binary_cache.insert(key, r);
        r
    }

    pub fn intersect(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        if a == NodeRef::BOTTOM || b == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if a == b {
            return a;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let key = (BinOp::Intersect, a, b);
        if let Some(&r) = self.binary_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.node_at(a), self.node_at(b));
        let r = if na.var < nb.var {
            self.intersect(na.lo, b)
        } else if nb.var < na.var {
            self.intersect(a, nb.lo)
        } else {
            let lo = self.intersect(na.lo, nb.lo);
            let hi = self.intersect(na.hi, nb.hi);
            self.mk(na.var, lo, hi)
        };
        self.binary_cache.insert(key, r);
        r
    }

    pub fn difference(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        if a == NodeRef::BOTTOM || a == b {
            return NodeRef::BOTTOM;
        }
        if b == NodeRef::BOTTOM {
            return a;
        }
        let key = (BinOp::Difference, a, b);
        if let Some(&r) = self.binary_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.node_at(a), self.node_at(b));
        let r = if na.var < nb.var {
            let lo = self.difference(na.lo, b);
            self.mk(na.var, lo, na.hi)
        } else if nb.var < na.var {
            self.difference(a, nb.lo)
        } else {
            let lo = self.difference(na.lo, nb.lo);
            let hi = self.difference(na.hi, nb.hi);
            self.mk(na.var, lo, hi)
        };
        self.binary_cache.insert(key, r);
        r
    }

    /// `a ∩ X̄_v`: the members of `a` that do not contain `v`.
    pub fn without(&mut self, a: NodeRef, v: u32) -> NodeRef {
        if a.is_terminal() {
            return a;
        }
        let na = self.node_at(a);
        if na.var > v {
            return a;
        }
        if na.var == v {
            return na.lo;
        }
        let key = (UnOp::Without, a, v);
        if let Some(&r) = self.unary_cache.get(&key) {
            return r;
        }
        let lo = self.without(na.lo, v);
        let hi = self.without(na.hi, v);
        let r = self.mk(na.var, lo, hi);
        self.unary_cache.insert(key, r);
        r
    }

    /// `a ∩ X_v`: the members of `a` that contain `v`.
    pub fn with(&mut self, a: NodeRef, v: u32) -> NodeRef {
        if a.is_terminal() {
            return NodeRef::BOTTOM;
        }
        let na = self.node_at(a);
        if na.var > v {
            return NodeRef::BOTTOM;
        }
        if na.var == v {
            return self.mk(v, NodeRef::BOTTOM, na.hi);
        }
        let key = (UnOp::With, a, v);
        if let Some(&r) = self.unary_cache.get(&key) {
            return r;
        }
        let lo = self.with(na.lo, v);
        let hi = self.with(na.hi, v);
        let r = self.mk(na.var, lo, hi);
        self.unary_cache.insert(key, r);
        r
    }

    /// `{ A ∈ a | no B ∈ b with A ⊆ B }`.
    pub fn not_subsumed(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        if a == NodeRef::BOTTOM || a == b {
            return NodeRef::BOTTOM;
        }
        if b == NodeRef::BOTTOM {
            return a;
        }
        if a == NodeRef::TOP {
            // ∅ is below every member of a non-empty b
            return NodeRef::BOTTOM;
        }
        if b == NodeRef::TOP {
            return self.difference(a, NodeRef::TOP);
        }
        let key = (BinOp::NotSubsumed, a, b);
        if let Some(&r) = self.binary_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.node_at(a), self.node_at(b));
        let r = if na.var < nb.var {
            let lo = self.not_subsumed(na.lo, b);
            self.mk(na.var, lo, na.hi)
        } else if nb.var < na.var {
            let flat = self.union(nb.lo, nb.hi);
            self.not_subsumed(a, flat)
        } else {
            let flat = self.union(nb.lo, nb.hi);
            let lo = self.not_subsumed(na.lo, flat);
            let hi = self.not_subsumed(na.hi, nb.hi);
            self.mk(na.var, lo, hi)
        };
        self.binary_cache.insert(key, r);
        r
    }

    /// `{ A ∈ a | no B ∈ b with B ⊆ A }`.
    pub fn not_superset(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        if a == NodeRef::BOTTOM || a == b || b == NodeRef::TOP {
            return NodeRef::BOTTOM;
        }
        if b == NodeRef::BOTTOM {
            return a;
        }
        let key = (BinOp::NotSuperset, a, b);
        if let Some(&r) = self.binary_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.node_at(a), self.node_at(b));
        let r = if na.var < nb.var {
            let lo = self.not_superset(na.lo, b);
            let hi = self.not_superset(na.hi, b);
            self.mk(na.var, lo, hi)
        } else if nb.var < na.var {
            self.not_superset(a, nb.lo)
        } else {
            let flat = self.union(nb.lo, nb.hi);
            let lo = self.not_superset(na.lo, nb.lo);
            let hi = self.not_superset(na.hi, flat);
            self.mk(na.var, lo, hi)
        };
        self.binary_cache.insert(key, r);
        r
    }

    /// Members of `a` not strictly contained in another member.
    pub fn maximal(&mut self, a: NodeRef) -> NodeRef {
        if a.is_terminal() {
            return a;
        }
        let key = (UnOp::Maximal, a, 0);
        if let Some(&r) = self.unary_cache.get(&key) {
            return r;
        }
        let na = self.node_at(a);
        let lo_max = self.maximal(na.lo);
        let lo = self.not_subsumed(lo_max, na.hi);
        let hi = self.maximal(na.hi);
        let r = self.mk(na.var, lo, hi);
        self.unary_cache.insert(key, r);
        r
    }

    /// Members of `a` not strictly containing another member.
    pub fn minimal(&mut self, a: NodeRef) -> NodeRef {
        if a.is_terminal() {
            return a;
        }
        let key = (UnOp::Minimal, a, 0);
        if let Some(&r) = self.unary_cache.get(&key) {
            return r;
        }
        let na = self.node_at(a);
        let lo = self.minimal(na.lo);
        let hi_min = self.minimal(na.hi);
        let hi = self.not_superset(hi_min, na.lo);
        let r = self.mk(na.var, lo, hi);
        self.unary_cache.insert(key, r);
        r
    }
}
