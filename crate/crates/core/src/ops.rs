//! Symbolic one-step operators on families: remove, add, swap, slide.
//!
//! Every operator is a single recursion over the diagram. The parameter sets
//! are consumed in label order, so the part still relevant at a node is a
//! suffix of the sorted array; memo keys are `(node, suffix start)` and live
//! for one top-level call.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::zdd::{NodeRef, ZddStore, TERMINAL_LABEL};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("token sliding needs a neighbor map")]
    MissingNeighbors,
    #[error("out- and in-neighbor maps disagree at {0} -> {1}")]
    InconsistentArcs(u32, u32),
    #[error("neighbor map covers {got} elements, universe has {universe}")]
    NeighborMapSize { got: u32, universe: u32 },
}

/// Strictly increasing list of elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(Vec<u32>);

impl ElementSet {
    /// Sorts and deduplicates.
    pub fn new(mut items: Vec<u32>) -> Self {
        items.sort_unstable();
        items.dedup();
        ElementSet(items)
    }

    /// `{1, ..., n}`.
    pub fn universe(n: u32) -> Self {
        ElementSet((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&[u32]> for ElementSet {
    fn from(s: &[u32]) -> Self {
        ElementSet::new(s.to_vec())
    }
}

/// For each element `x` in `1..=n`, its sorted neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborMap {
    lists: Vec<Vec<u32>>,
}

impl NeighborMap {
    /// `lists[x]` holds the neighbors of `x`; index 0 is ignored.
    pub fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        if lists.is_empty() {
            lists.push(Vec::new());
        }
        lists[0].clear();
        for (x, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            l.retain(|&y| y as usize != x);
        }
        NeighborMap { lists }
    }

    /// Number of elements covered.
    pub fn len(&self) -> u32 {
        self.lists.len() as u32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, x: u32) -> &[u32] {
        self.lists.get(x as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Neighbors of `x` with a larger label.
    fn later(&self, x: u32) -> &[u32] {
        let l = self.get(x);
        &l[l.partition_point(|&y| y <= x)..]
    }

    fn max_later(&self, x: u32) -> u32 {
        self.get(x).last().copied().filter(|&y| y > x).unwrap_or(0)
    }

    /// Map sending each `x` to every element that lists `x`.
    pub fn transpose(&self) -> NeighborMap {
        let mut lists = vec![Vec::new(); self.lists.len()];
        for x in 1..self.lists.len() {
            for &y in &self.lists[x] {
                lists[y as usize].push(x as u32);
            }
        }
        NeighborMap::from_lists(lists)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

/// Reconfiguration rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Token addition and removal.
    Tar,
    /// Token jumping.
    Tj,
    /// Token sliding.
    Ts,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Tar => "tar",
            Model::Tj => "tj",
            Model::Ts => "ts",
        })
    }
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "tar" => Ok(Model::Tar),
            "tj" => Ok(Model::Tj),
            "ts" => Ok(Model::Ts),
            other => Err(format!("unknown model `{other}` (expected tar, tj or ts)")),
        }
    }
}

/// Everything a step needs besides the family: the universe and, for
/// sliding, the adjacency between elements.
#[derive(Clone, Debug)]
pub struct StepContext {
    universe: u32,
    slide: Option<SlideMaps>,
}

#[derive(Clone, Debug)]
struct SlideMaps {
    out: NeighborMap,
    inn: NeighborMap,
    directed: bool,
}

impl StepContext {
    /// Context without adjacency; sliding is rejected.
    pub fn plain(universe: u32) -> Self {
        StepContext { universe, slide: None }
    }

    /// Undirected sliding along `nb`.
    pub fn undirected(nb: NeighborMap) -> Result<Self, OpError> {
        if !nb.is_symmetric() {
            let t = nb.transpose();
            for x in 1..=nb.len() {
                if let Some(&y) = nb.get(x).iter().find(|&&y| !t.get(x).contains(&y)) {
                    return Err(OpError::InconsistentArcs(x, y));
                }
            }
        }
        Ok(StepContext {
            universe: nb.len(),
            slide: Some(SlideMaps { out: nb.clone(), inn: nb, directed: false }),
        })
    }

    /// Directed sliding: tokens move from `u` to `v` only when `v ∈ out(u)`.
    pub fn directed(out: NeighborMap, inn: NeighborMap) -> Result<Self, OpError> {
        check_arcs(&out, &inn)?;
        Ok(StepContext {
            universe: out.len(),
            slide: Some(SlideMaps { out, inn, directed: true }),
        })
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Out-map and in-map when sliding is available.
    pub fn neighbor_maps(&self) -> Option<(&NeighborMap, &NeighborMap)> {
        self.slide.as_ref().map(|m| (&m.out, &m.inn))
    }

    pub fn is_directed(&self) -> bool {
        self.slide.as_ref().is_some_and(|m| m.directed)
    }
}

fn check_arcs(out: &NeighborMap, inn: &NeighborMap) -> Result<(), OpError> {
    if out.len() != inn.len() {
        return Err(OpError::NeighborMapSize { got: inn.len(), universe: out.len() });
    }
    for u in 1..=out.len() {
        for &v in out.get(u) {
            if !inn.get(v).contains(&u) {
                return Err(OpError::InconsistentArcs(u, v));
            }
        }
    }
    for v in 1..=inn.len() {
        for &u in inn.get(v) {
            if !out.get(u).contains(&v) {
                return Err(OpError::InconsistentArcs(u, v));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Tag {
    Remove,
    Add,
    Swap,
    Slide,
}

/// One top-level operator call: the store plus its private memo table.
struct Engine<'s> {
    store: &'s mut ZddStore,
    memo: FxHashMap<(Tag, u32, u32, NodeRef), NodeRef>,
}

impl<'s> Engine<'s> {
    fn new(store: &'s mut ZddStore) -> Self {
        Engine { store, memo: FxHashMap::default() }
    }

    /// `{ I \ {v} | I ∈ z, v ∈ I ∩ set }`; `id` names `set` in the memo.
    fn remove(&mut self, z: NodeRef, set: &[u32], id: u32) -> NodeRef {
        if z.is_terminal() || set.is_empty() {
            return NodeRef::BOTTOM;
        }
        let (x, lo, hi) = self.store.node(z).unwrap();
        // what is left of `set` at this node only depends on its label
        if set.last().is_some_and(|&m| m < x) {
            return NodeRef::BOTTOM;
        }
        let key = (Tag::Remove, id, 0, z);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let mut z0 = self.remove(lo, set, id);
        if set.binary_search(&x).is_ok() {
            z0 = self.store.union(z0, hi);
        }
        let z1 = self.remove(hi, set, id);
        let r = self.store.mk(x, z0, z1);
        self.memo.insert(key, r);
        r
    }

    /// `{ I ∪ {v} | I ∈ z, v ∈ set[from..] \ I }`.
    fn add(&mut self, z: NodeRef, set: &[u32], id: u32, from: usize) -> NodeRef {
        if z == NodeRef::BOTTOM || from == set.len() {
            return NodeRef::BOTTOM;
        }
        let key = (Tag::Add, id, from as u32, z);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let y = set[from];
        let x = self.store.label(z).unwrap_or(TERMINAL_LABEL);
        let r = if y < x {
            // y does not occur below: the node (y, z, ⊥) is implicit
            let z0 = self.add(z, set, id, from + 1);
            self.store.mk(y, z0, z)
        } else {
            let (lo, hi) = (self.store.lo(z), self.store.hi(z));
            let hit = y == x;
            let next = from + hit as usize;
            let z0 = self.add(lo, set, id, next);
            let mut z1 = self.add(hi, set, id, next);
            if hit {
                z1 = self.store.union(z1, lo);
            }
            self.store.mk(x, z0, z1)
        };
        self.memo.insert(key, r);
        r
    }

    /// `{ I ∪ {v} \ {v'} | I ∈ z, v ∈ a[from..] \ I, v' ∈ I ∩ r }`.
    fn swap(&mut self, z: NodeRef, a: &[u32], from: usize, r: &[u32]) -> NodeRef {
        if z.is_terminal() || from == a.len() || r.is_empty() {
            return NodeRef::BOTTOM;
        }
        let key = (Tag::Swap, 0, from as u32, z);
        if let Some(&res) = self.memo.get(&key) {
            return res;
        }
        let (x, lo, hi) = self.store.node(z).unwrap();
        let y = a[from];
        let res = if y < x {
            // implicit node (y, z, ⊥): only "add y, remove something" is new
            let z0 = self.swap(z, a, from + 1, r);
            let z1 = self.remove(z, r, 0);
            self.store.mk(y, z0, z1)
        } else {
            let in_a = y == x;
            let next = from + in_a as usize;
            let in_r = r.binary_search(&x).is_ok();
            let mut z0 = self.swap(lo, a, next, r);
            if in_r {
                let moved = self.add(hi, a, 0, next);
                z0 = self.store.union(z0, moved);
            }
            let mut z1 = self.swap(hi, a, next, r);
            if in_a {
                let moved = self.remove(lo, r, 0);
                z1 = self.store.union(z1, moved);
            }
            self.store.mk(x, z0, z1)
        };
        self.memo.insert(key, res);
        res
    }

    /// Token moves whose both endpoints are `>= level`; the support of `z`
    /// lies in `[level, n]`. Undirected sliding passes the same map twice.
    fn slide(&mut self, z: NodeRef, mut level: u32, out: &NeighborMap, inn: &NeighborMap) -> NodeRef {
        if z.is_terminal() {
            return NodeRef::BOTTOM;
        }
        let (x, lo, hi) = self.store.node(z).unwrap();
        // levels above x matter only if a token below can slide up into them
        while level < x && inn.max_later(level) < x {
            level += 1;
        }
        let key = (Tag::Slide, 0, level, z);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = if level < x {
            let z0 = self.slide(z, level + 1, out, inn);
            let z1 = self.remove(z, inn.later(level), level);
            self.store.mk(level, z0, z1)
        } else {
            let mut z0 = self.slide(lo, x + 1, out, inn);
            let away = self.add(hi, out.later(x), x, 0);
            z0 = self.store.union(z0, away);
            let mut z1 = self.slide(hi, x + 1, out, inn);
            let into = self.remove(lo, inn.later(x), x);
            z1 = self.store.union(z1, into);
            self.store.mk(x, z0, z1)
        };
        self.memo.insert(key, r);
        r
    }
}

/// `{ I \ {v} | I ∈ S(z), v ∈ I ∩ r }`.
pub fn remove(store: &mut ZddStore, z: NodeRef, r: &ElementSet) -> NodeRef {
    Engine::new(store).remove(z, r.as_slice(), 0)
}

/// `{ I ∪ {x} | I ∈ S(z), x ∈ a \ I }`.
pub fn add(store: &mut ZddStore, z: NodeRef, a: &ElementSet) -> NodeRef {
    Engine::new(store).add(z, a.as_slice(), 0, 0)
}

/// `{ I ∪ {v} \ {v'} | I ∈ S(z), v ∈ a \ I, v' ∈ I ∩ r }`.
pub fn swap(store: &mut ZddStore, z: NodeRef, a: &ElementSet, r: &ElementSet) -> NodeRef {
    Engine::new(store).swap(z, a.as_slice(), 0, r.as_slice())
}

/// Token sliding along an undirected neighbor map.
pub fn slide(store: &mut ZddStore, z: NodeRef, nb: &NeighborMap) -> NodeRef {
    Engine::new(store).slide(z, 1, nb, nb)
}

/// Token sliding along arcs: a token on `u` may move to `v` iff `v ∈ out(u)`.
pub fn slide_directed(
    store: &mut ZddStore,
    z: NodeRef,
    out: &NeighborMap,
    inn: &NeighborMap,
) -> Result<NodeRef, OpError> {
    check_arcs(out, inn)?;
    Ok(Engine::new(store).slide(z, 1, out, inn))
}

/// All families one move away from some member of `z` under `model`.
pub fn step(store: &mut ZddStore, model: Model, z: NodeRef, ctx: &StepContext) -> Result<NodeRef, OpError> {
    let u = ElementSet::universe(ctx.universe);
    Ok(match model {
        Model::Tar => {
            let removed = remove(store, z, &u);
            let added = add(store, z, &u);
            store.union(removed, added)
        }
        Model::Tj => swap(store, z, &u, &u),
        Model::Ts => {
            let maps = ctx.slide.as_ref().ok_or(OpError::MissingNeighbors)?;
            if maps.out.len() != store.universe() {
                return Err(OpError::NeighborMapSize { got: maps.out.len(), universe: store.universe() });
            }
            Engine::new(store).slide(z, 1, &maps.out, &maps.inn)
        }
    })
}
