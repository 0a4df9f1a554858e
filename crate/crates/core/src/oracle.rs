//! Brute-force reference implementations.
//!
//! Everything here works on explicit lists of sets and re-derives the
//! definitions directly from the graph's edge list. Nothing calls into the
//! diagram algorithms; [`dump`] only walks nodes through
//! [`ZddStore::node`]. All routines are exponential by design.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::builders::{Extremal, ObjectClass, ObjectKind};
use crate::graph::Graph;
use crate::ops::Model;
use crate::zdd::{NodeRef, ZddStore};

/// Largest universe [`enumerate_predicate`] will scan.
pub const MAX_ENUM_UNIVERSE: u32 = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("universe of {0} elements is too large to enumerate")]
    TooLarge(u32),
    #[error("family has more than {0} members")]
    BoundExceeded(usize),
    #[error("{0:?} is not a member of the family")]
    NotMember(Vec<u32>),
    #[error("malformed dump line {line}: {text}")]
    Parse { line: usize, text: String },
}

/// A sorted, duplicate-free list of sorted sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExplicitFamily {
    sets: Vec<Vec<u32>>,
}

impl ExplicitFamily {
    pub fn new(sets: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut sets: Vec<Vec<u32>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        ExplicitFamily { sets }
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &[u32]) -> bool {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    pub fn position(&self, set: &[u32]) -> Option<usize> {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).ok()
    }

    pub fn filter(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        ExplicitFamily { sets: self.sets.iter().filter(|s| keep(s)).cloned().collect() }
    }

    /// Sets with no proper superset in the family.
    pub fn maximal(&self) -> Self {
        self.filter(|s| !self.sets.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
    }

    /// Sets with no proper subset in the family.
    pub fn minimal(&self) -> Self {
        self.filter(|s| !self.sets.iter().any(|t| t.len() < s.len() && is_subset(t, s)))
    }

    /// Same text format as [`ZddStore::dump_text`].
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            let words: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self, OracleError> {
        let mut sets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let set = line
                .split_whitespace()
                .map(|w| w.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| OracleError::Parse { line: i + 1, text: line.to_string() })?;
            sets.push(set);
        }
        Ok(ExplicitFamily::new(sets))
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let only_a = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let only_b = b.iter().copied().filter(|x| !a.contains(x)).collect();
    (only_a, only_b)
}

/// Explicit listing of a diagram's members, refusing more than `bound`.
pub fn dump(store: &ZddStore, a: NodeRef, bound: usize) -> Result<ExplicitFamily, OracleError> {
    fn walk(store: &ZddStore, f: NodeRef, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, bound: usize) -> bool {
        if f == NodeRef::BOTTOM {
            return true;
        }
        if f == NodeRef::TOP {
            out.push(prefix.clone());
            return out.len() <= bound;
        }
        let (var, lo, hi) = store.node(f).expect("non-terminal node");
        if !walk(store, lo, prefix, out, bound) {
            return false;
        }
        prefix.push(var);
        let ok = walk(store, hi, prefix, out, bound);
        prefix.pop();
        ok
    }
    let mut out = Vec::new();
    if !walk(store, a, &mut Vec::new(), &mut out, bound) {
        return Err(OracleError::BoundExceeded(bound));
    }
    Ok(ExplicitFamily::new(out))
}

/// All subsets of `1..=n`.
pub fn power_set(n: u32) -> Result<ExplicitFamily, OracleError> {
    if n > MAX_ENUM_UNIVERSE {
        return Err(OracleError::TooLarge(n));
    }
    Ok(ExplicitFamily::new((0u64..1 << n).map(|mask| mask_to_set(mask, n))))
}

fn mask_to_set(mask: u64, n: u32) -> Vec<u32> {
    (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect()
}

/// Undirected adjacency matrix, index 0 unused.
fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count() as usize;
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for &(u, v) in g.edges() {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    adj
}

/// Hop distances between all vertex pairs, ignoring arc direction.
fn distances(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count() as usize;
    let adj = adjacency(g);
    let mut dist = vec![vec![u32::MAX; n + 1]; n + 1];
    for (s, row) in dist.iter_mut().enumerate().skip(1) {
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in 1..=n {
                if adj[u][w] && row[w] == u32::MAX {
                    row[w] = row[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Direct check of the defining property of `kind` for one set.
pub fn satisfies(g: &Graph, kind: ObjectKind, set: &[u32]) -> bool {
    let n = g.vertex_count();
    match kind {
        ObjectKind::IndependentSet => distance_independent(g, set, 1),
        ObjectKind::DistanceIndependentSet(k) => distance_independent(g, set, k),
        ObjectKind::VertexCover => g.edges().iter().all(|(u, v)| set.contains(u) || set.contains(v)),
        ObjectKind::DominatingSet => distance_dominating(g, set, 1),
        ObjectKind::DistanceDominatingSet(k) => distance_dominating(g, set, k),
        ObjectKind::Clique => {
            let adj = adjacency(g);
            set.iter().all(|&u| set.iter().all(|&v| u == v || adj[u as usize][v as usize]))
        }
        ObjectKind::Matching => {
            let mut used = vec![false; n as usize + 1];
            for &e in set {
                let Some(&(u, v)) = (e as usize).checked_sub(1).and_then(|i| g.edges().get(i)) else {
                    return false;
                };
                if used[u as usize] || used[v as usize] {
                    return false;
                }
                used[u as usize] = true;
                used[v as usize] = true;
            }
            true
        }
    }
}

fn distance_independent(g: &Graph, set: &[u32], k: u32) -> bool {
    let d = distances(g);
    set.iter().all(|&u| set.iter().all(|&v| u == v || d[u as usize][v as usize] > k))
}

fn distance_dominating(g: &Graph, set: &[u32], k: u32) -> bool {
    let d = distances(g);
    (1..=g.vertex_count()).all(|v| set.iter().any(|&u| d[u as usize][v as usize] <= k))
}

/// Whether `set` is an object of `class` in `g`. Every kind is either closed
/// under subsets or under supersets, so extremality only needs
/// single-element changes.
pub fn satisfies_class(g: &Graph, class: ObjectClass, set: &[u32]) -> bool {
    if !satisfies(g, class.kind, set) {
        return false;
    }
    let universe = universe_size(g, class.kind);
    match class.filter {
        None => true,
        Some(Extremal::Maximal) => (1..=universe).filter(|x| !set.contains(x)).all(|x| {
            let mut bigger = set.to_vec();
            bigger.push(x);
            bigger.sort_unstable();
            !satisfies(g, class.kind, &bigger)
        }),
        Some(Extremal::Minimal) => set.iter().all(|&x| {
            let smaller: Vec<u32> = set.iter().copied().filter(|&y| y != x).collect();
            !satisfies(g, class.kind, &smaller)
        }),
    }
}

fn universe_size(g: &Graph, kind: ObjectKind) -> u32 {
    match kind {
        ObjectKind::Matching => g.edge_count() as u32,
        _ => g.vertex_count(),
    }
}

/// Every subset of the kind's universe satisfying its predicate, then
/// narrowed to maximal or minimal members as the class asks.
pub fn enumerate_predicate(g: &Graph, class: ObjectClass) -> Result<ExplicitFamily, OracleError> {
    let all = power_set(universe_size(g, class.kind))?;
    let base = all.filter(|s| satisfies(g, class.kind, s));
    Ok(match class.filter {
        None => base,
        Some(Extremal::Maximal) => base.maximal(),
        Some(Extremal::Minimal) => base.minimal(),
    })
}

/// Which pairs of sets are one move apart.
#[derive(Clone, Debug)]
pub struct Moves {
    pub model: Model,
    /// Allowed slides `(from, to)`; both orientations for undirected edges.
    pub arcs: HashSet<(u32, u32)>,
}

impl Moves {
    pub fn new(model: Model) -> Self {
        Moves { model, arcs: HashSet::new() }
    }

    /// Slides along the graph's edges, or along shared endpoints when the
    /// elements are edges.
    pub fn for_graph(model: Model, g: &Graph, kind: ObjectKind) -> Self {
        let mut arcs = HashSet::new();
        if kind == ObjectKind::Matching {
            let edges = g.edges();
            for (i, a) in edges.iter().enumerate() {
                for (j, b) in edges.iter().enumerate() {
                    let touch = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
                    if i != j && touch {
                        arcs.insert((i as u32 + 1, j as u32 + 1));
                    }
                }
            }
        } else {
            for &(u, v) in g.edges() {
                arcs.insert((u, v));
                if !g.is_directed() {
                    arcs.insert((v, u));
                }
            }
        }
        Moves { model, arcs }
    }

    /// True when `to` is obtained from `from` by exactly one move.
    pub fn adjacent(&self, from: &[u32], to: &[u32]) -> bool {
        let (gone, new) = symmetric_difference(from, to);
        match self.model {
            Model::Tar => gone.len() + new.len() == 1,
            Model::Tj => gone.len() == 1 && new.len() == 1,
            Model::Ts => gone.len() == 1 && new.len() == 1 && self.arcs.contains(&(gone[0], new[0])),
        }
    }
}

/// Distance from the nearest start to each member, `None` if unreachable.
pub fn explicit_bfs(family: &ExplicitFamily, moves: &Moves, starts: &[Vec<u32>]) -> Result<Vec<Option<usize>>, OracleError> {
    let sets = family.sets();
    let mut dist = vec![None; sets.len()];
    let mut queue = VecDeque::new();
    for s in starts {
        let mut s = s.clone();
        s.sort_unstable();
        let i = family.position(&s).ok_or(OracleError::NotMember(s))?;
        if dist[i].is_none() {
            dist[i] = Some(0);
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let d = dist[i].unwrap();
        for j in 0..sets.len() {
            if dist[j].is_none() && moves.adjacent(&sets[i], &sets[j]) {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    Ok(dist)
}

/// `{ I \ {v} | I ∈ F, v ∈ I ∩ R }`
pub fn remove(f: &ExplicitFamily, r: &[u32]) -> ExplicitFamily {
    let mut out = Vec::new();
    for s in f.sets() {
        for &v in s.iter().filter(|v| r.contains(v)) {
            out.push(s.iter().copied().filter(|&x| x != v).collect());
        }
    }
    ExplicitFamily::new(out)
}

/// `{ I ∪ {v} | I ∈ F, v ∈ A \ I }`
pub fn add(f: &ExplicitFamily, a: &[u32]) -> ExplicitFamily {
    let mut out = Vec::new();
    for s in f.sets() {
        for &v in a.iter().filter(|v| !s.contains(v)) {
            let mut t = s.clone();
            t.push(v);
            out.push(t);
        }
    }
    ExplicitFamily::new(out)
}

/// `{ I ∪ {v} \ {v'} | I ∈ F, v ∈ A \ I, v' ∈ I ∩ R }`
pub fn swap(f: &ExplicitFamily, a: &[u32], r: &[u32]) -> ExplicitFamily {
    let mut out = Vec::new();
    for s in f.sets() {
        for &old in s.iter().filter(|v| r.contains(v)) {
            for &new in a.iter().filter(|v| !s.contains(v)) {
                let mut t: Vec<u32> = s.iter().copied().filter(|&x| x != old).collect();
                t.push(new);
                out.push(t);
            }
        }
    }
    ExplicitFamily::new(out)
}

/// Token moves along `arcs`: `{ I ∪ {v} \ {v'} | v' ∈ I, v ∉ I, (v', v) ∈ arcs }`.
pub fn slide(f: &ExplicitFamily, arcs: &HashSet<(u32, u32)>) -> ExplicitFamily {
    let mut out = Vec::new();
    for s in f.sets() {
        for &(old, new) in arcs {
            if s.contains(&old) && !s.contains(&new) {
                let mut t: Vec<u32> = s.iter().copied().filter(|&x| x != old).collect();
                t.push(new);
                out.push(t);
            }
        }
    }
    ExplicitFamily::new(out)
}

/// Independent sets of the `rows × cols` grid by a column-state recurrence.
pub fn transfer_matrix_grid_count(rows: u32, cols: u32) -> Result<BigUint, OracleError> {
    if rows > 12 {
        return Err(OracleError::TooLarge(rows));
    }
    let states: Vec<u32> = (0u32..1 << rows).filter(|m| m & (m >> 1) == 0).collect();
    if cols == 0 {
        return Ok(BigUint::one());
    }
    let mut ways = vec![BigUint::one(); states.len()];
    for _ in 1..cols {
        let mut next = vec![BigUint::zero(); states.len()];
        for (i, &cur) in states.iter().enumerate() {
            for (j, &prev) in states.iter().enumerate() {
                if cur & prev == 0 {
                    next[i] += &ways[j];
                }
            }
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

/// Checks a reconfiguration sequence against the definitions: every step
/// is an object of the class with at least `threshold` elements and
/// consecutive steps are one move apart.
pub fn check_sequence(
    g: &Graph,
    class: ObjectClass,
    threshold: u32,
    moves: &Moves,
    sequence: &[Vec<u32>],
) -> Result<(), String> {
    if sequence.is_empty() {
        return Err("empty sequence".into());
    }
    for (i, s) in sequence.iter().enumerate() {
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("step {i} is not strictly ascending: {s:?}"));
        }
        if (s.len() as u32) < threshold {
            return Err(format!("step {i} has fewer than {threshold} elements: {s:?}"));
        }
        if !satisfies_class(g, class, s) {
            return Err(format!("step {i} is not a valid object: {s:?}"));
        }
    }
    for (i, w) in sequence.windows(2).enumerate() {
        if !moves.adjacent(&w[0], &w[1]) {
            return Err(format!("steps {i} and {} are not one move apart: {:?} -> {:?}", i + 1, w[0], w[1]));
        }
    }
    Ok(())
}
