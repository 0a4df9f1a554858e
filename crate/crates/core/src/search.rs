//! Layered symbolic breadth-first search over a solution space.
//!
//! Layer `i` holds exactly the objects at distance `i` from the start
//! family: `Z^i = (step(Z^{i-1}) ∩ Z_sol) \ (Z^0 ∪ … ∪ Z^{i-1})`. The search
//! stops when a layer comes out empty (the reachable closure is complete) or
//! a caller-supplied predicate fires.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use thiserror::Error;

use crate::builders::{build_family, ObjectClass};
use crate::graph::Graph;
use crate::ops::{step, Model, OpError, StepContext};
use crate::zdd::{NodeRef, Objective, ZddError, ZddStore};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("start set {0:?} is not a feasible object")]
    InfeasibleStart(Vec<u32>),
    #[error("target set {0:?} is not a feasible object")]
    InfeasibleTarget(Vec<u32>),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("solution space is empty")]
    EmptySolutionSpace,
    #[error("resource limit exceeded: {0}")]
    Exhausted(String),
    #[error(transparent)]
    Zdd(#[from] ZddError),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Reachability,
    Shortest,
    Farthest,
    Connectivity,
    Optimization,
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reachability" | "reach" => Ok(Variant::Reachability),
            "shortest" => Ok(Variant::Shortest),
            "farthest" => Ok(Variant::Farthest),
            "connectivity" => Ok(Variant::Connectivity),
            "optimization" | "opt" => Ok(Variant::Optimization),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Reachability => "reachability",
            Variant::Shortest => "shortest",
            Variant::Farthest => "farthest",
            Variant::Connectivity => "connectivity",
            Variant::Optimization => "optimization",
        })
    }
}

/// A complete problem statement.
#[derive(Clone, Debug)]
pub struct ReconfInstance {
    pub graph: Graph,
    pub class: ObjectClass,
    pub model: Model,
    pub variant: Variant,
    /// Members of the solution space have at least this many elements.
    pub threshold: u32,
    pub starts: Vec<Vec<u32>>,
    pub targets: Vec<Vec<u32>>,
    pub objective: Option<Objective>,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Cap on allocated diagram nodes, checked after each layer.
    pub max_nodes: Option<usize>,
    /// Cap on the number of layers built.
    pub max_layers: Option<usize>,
    /// Garbage-collect unreachable nodes between layers.
    pub compact: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: None, max_layers: None, compact: true }
    }
}

/// Size of one frontier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerStat {
    pub nodes: usize,
    pub members: BigUint,
}

/// Frontier families `Z^0, Z^1, …` of one search.
#[derive(Clone, Debug)]
pub struct LayerTrace {
    pub solution_space: NodeRef,
    pub layers: Vec<NodeRef>,
    pub visited: NodeRef,
    pub stats: Vec<LayerStat>,
    /// True when the search ran until a layer came out empty.
    pub closed: bool,
}

impl LayerTrace {
    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn last_layer(&self) -> NodeRef {
        *self.layers.last().expect("a trace always has layer 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Reachable { length: usize },
    Unreachable,
    Connected,
    Disconnected,
    Farthest { distance: usize },
    Optimal { value: i64, length: usize },
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub solution_nodes: usize,
    pub solution_count: BigUint,
    pub layers: Vec<LayerStat>,
    pub peak_nodes: usize,
    pub membership_tests: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ReconfResult {
    pub outcome: Outcome,
    /// `I_0, …, I_h`, each a sorted set; empty when the outcome has none.
    pub sequence: Vec<Vec<u32>>,
    /// Farthest object, optimum, or the sampled start for connectivity.
    pub witness: Option<Vec<u32>>,
    pub stats: SolveStats,
}

/// Sequence found by backtracking plus how many membership tests it took.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub sequence: Vec<Vec<u32>>,
    pub membership_tests: usize,
}

const COMPACT_FLOOR: usize = 1 << 16;

/// A solution space in a store, with the rule connecting its members.
pub struct Problem {
    pub store: ZddStore,
    pub solution_space: NodeRef,
    pub model: Model,
    pub ctx: StepContext,
    pub limits: SearchLimits,
    live_after_compact: usize,
}

fn normalize(set: &[u32], universe: u32) -> Result<Vec<u32>, SearchError> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > universe) {
        return Err(SearchError::InvalidInstance(format!("element {bad} outside 1..={universe}")));
    }
    Ok(s)
}

/// The adjacency a model needs on the instance's universe.
pub fn step_context(graph: &Graph, class: ObjectClass, model: Model) -> Result<StepContext, SearchError> {
    let universe = class.kind.universe_size(graph);
    if model != Model::Ts {
        return Ok(StepContext::plain(universe));
    }
    Ok(if class.kind.uses_edge_universe() {
        StepContext::undirected(graph.edge_neighbors())?
    } else if graph.is_directed() {
        StepContext::directed(graph.out_neighbors(), graph.in_neighbors())?
    } else {
        StepContext::undirected(graph.neighbors())?
    })
}

/// `Z_sol = family ∩ at_least(k)`, checking that every start and target is a member.
pub fn build_solution_space(store: &mut ZddStore, inst: &ReconfInstance) -> Result<NodeRef, SearchError> {
    let mut z = build_family(store, &inst.graph, inst.class);
    if inst.threshold > 0 {
        let big = store.at_least(inst.threshold);
        z = store.intersect(z, big);
        store.clear_caches();
    }
    let n = store.universe();
    for s in &inst.starts {
        let s = normalize(s, n)?;
        if !store.contains(z, &s)? {
            return Err(SearchError::InfeasibleStart(s));
        }
    }
    for t in &inst.targets {
        let t = normalize(t, n)?;
        if !store.contains(z, &t)? {
            return Err(SearchError::InfeasibleTarget(t));
        }
    }
    Ok(z)
}

impl Problem {
    pub fn new(store: ZddStore, solution_space: NodeRef, model: Model, ctx: StepContext) -> Self {
        Problem { store, solution_space, model, ctx, limits: SearchLimits::default(), live_after_compact: 0 }
    }

    /// Builds the solution space of `inst` in a fresh store.
    pub fn from_instance(inst: &ReconfInstance, limits: SearchLimits) -> Result<Self, SearchError> {
        let universe = inst.class.kind.universe_size(&inst.graph);
        let ctx = step_context(&inst.graph, inst.class, inst.model)?;
        let mut store = ZddStore::new(universe);
        let z = build_solution_space(&mut store, inst)?;
        let mut p = Problem::new(store, z, inst.model, ctx);
        p.limits = limits;
        p.check_nodes()?;
        Ok(p)
    }

    fn check_nodes(&mut self) -> Result<(), SearchError> {
        if let Some(cap) = self.limits.max_nodes {
            if self.store.len() > cap {
                return Err(SearchError::Exhausted(format!("{} nodes allocated, cap is {cap}", self.store.len())));
            }
        }
        Ok(())
    }

    fn maybe_compact(&mut self, trace: &mut LayerTrace) {
        let over_cap = self.limits.max_nodes.is_some_and(|cap| self.store.len() > cap);
        let threshold = (2 * self.live_after_compact).max(COMPACT_FLOOR);
        if !self.limits.compact || (!over_cap && self.store.len() <= threshold) {
            return;
        }
        let mut roots = Vec::with_capacity(trace.layers.len() + 2);
        roots.push(trace.solution_space);
        roots.push(trace.visited);
        roots.extend_from_slice(&trace.layers);
        self.live_after_compact = self.store.compact(&mut roots);
        trace.solution_space = roots[0];
        trace.visited = roots[1];
        trace.layers.copy_from_slice(&roots[2..]);
        self.solution_space = trace.solution_space;
    }

    /// Family of explicit sets, normalized and checked against the universe.
    pub fn family_of(&mut self, sets: &[Vec<u32>]) -> Result<NodeRef, SearchError> {
        let n = self.store.universe();
        let sets = sets.iter().map(|s| normalize(s, n)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.store.from_sets(&sets)?)
    }

    fn layer_stat(&self, z: NodeRef) -> LayerStat {
        LayerStat { nodes: self.store.node_count(z), members: self.store.count(z) }
    }

    /// Runs the layered search from `start` until the frontier empties or
    /// `stop` returns true for a freshly built layer (layer 0 included).
    /// Compaction may renumber nodes; only the references inside the
    /// returned trace and `self.solution_space` stay valid.
    pub fn bfs_layers(
        &mut self,
        start: NodeRef,
        mut stop: impl FnMut(&ZddStore, NodeRef) -> bool,
        progress: &mut dyn FnMut(usize, &LayerStat),
    ) -> Result<LayerTrace, SearchError> {
        let stat = self.layer_stat(start);
        progress(0, &stat);
        let mut trace = LayerTrace {
            solution_space: self.solution_space,
            layers: vec![start],
            visited: start,
            stats: vec![stat],
            closed: false,
        };
        if start == NodeRef::BOTTOM {
            trace.closed = true;
            return Ok(trace);
        }
        if stop(&self.store, start) {
            return Ok(trace);
        }
        loop {
            if let Some(cap) = self.limits.max_layers {
                if trace.layers.len() > cap {
                    return Err(SearchError::Exhausted(format!("more than {cap} layers")));
                }
            }
            let frontier = trace.last_layer();
            let moved = step(&mut self.store, self.model, frontier, &self.ctx)?;
            let feasible = self.store.intersect(moved, trace.solution_space);
            let next = self.store.difference(feasible, trace.visited);
            if next == NodeRef::BOTTOM {
                self.store.clear_caches();
                trace.closed = true;
                return Ok(trace);
            }
            trace.visited = self.store.union(trace.visited, next);
            self.store.clear_caches();
            trace.layers.push(next);
            let stat = self.layer_stat(next);
            progress(trace.layers.len() - 1, &stat);
            trace.stats.push(stat);
            self.maybe_compact(&mut trace);
            self.check_nodes()?;
            if stop(&self.store, trace.last_layer()) {
                return Ok(trace);
            }
        }
    }

    /// Backtracks from `target` (a member of the top layer) to layer 0.
    /// Predecessor candidates are scanned by removed element, then by the
    /// element put back, both ascending; the first one found in the previous
    /// layer is taken.
    pub fn reconstruct_sequence(&self, trace: &LayerTrace, target: &[u32]) -> Result<Reconstruction, SearchError> {
        let n = self.store.universe();
        let target = normalize(target, n)?;
        let h = trace.depth();
        if !self.store.contains(trace.layers[h], &target)? {
            return Err(SearchError::Internal(format!("{target:?} is not in layer {h}")));
        }
        let mut tests = 0usize;
        let mut seq = vec![target];
        for p in (1..=h).rev() {
            let cur = seq.last().unwrap();
            let layer = trace.layers[p - 1];
            let found = self.predecessors(cur).find(|cand| {
                tests += 1;
                self.store.contains_unchecked(layer, cand)
            });
            match found {
                Some(prev) => seq.push(prev),
                None => return Err(SearchError::Internal(format!("no predecessor of {cur:?} in layer {}", p - 1))),
            }
        }
        seq.reverse();
        Ok(Reconstruction { sequence: seq, membership_tests: tests })
    }

    /// Sets that reach `cur` in one move, in scan order.
    fn predecessors<'a>(&'a self, cur: &'a [u32]) -> Box<dyn Iterator<Item = Vec<u32>> + 'a> {
        let n = self.store.universe();
        let absent = move |v: &u32| cur.binary_search(v).is_err();
        let exchange = move |w: u32, v: u32| {
            let mut s: Vec<u32> = cur.iter().copied().filter(|&x| x != w).collect();
            let pos = s.partition_point(|&x| x < v);
            s.insert(pos, v);
            s
        };
        match self.model {
            Model::Tar => Box::new((1..=n).map(move |x| {
                let mut s = cur.to_vec();
                match s.binary_search(&x) {
                    Ok(i) => {
                        s.remove(i);
                    }
                    Err(i) => s.insert(i, x),
                }
                s
            })),
            Model::Tj => Box::new(
                cur.iter().flat_map(move |&w| (1..=n).filter(absent).map(move |v| exchange(w, v))),
            ),
            Model::Ts => {
                let (_, inn) = self.ctx.neighbor_maps().expect("sliding context has neighbor maps");
                // a token now on w came from some v with an arc v -> w
                Box::new(cur.iter().flat_map(move |&w| {
                    inn.get(w).iter().copied().filter(absent).map(move |v| exchange(w, v))
                }))
            }
        }
    }

    fn base_stats(&self) -> SolveStats {
        SolveStats {
            solution_nodes: self.store.node_count(self.solution_space),
            solution_count: self.store.count(self.solution_space),
            ..SolveStats::default()
        }
    }

    fn finish(&self, mut stats: SolveStats, trace: &LayerTrace, started: Instant) -> SolveStats {
        stats.layers = trace.stats.clone();
        stats.peak_nodes = self.store.peak_len();
        stats.elapsed = started.elapsed();
        stats
    }

    /// Reachability and shortest length from any start to any target.
    pub fn solve_reachability(
        &mut self,
        starts: &[Vec<u32>],
        targets: &[Vec<u32>],
        progress: &mut dyn FnMut(usize, &LayerStat),
    ) -> Result<ReconfResult, SearchError> {
        if starts.is_empty() || targets.is_empty() {
            return Err(SearchError::InvalidInstance("reachability needs start and target sets".into()));
        }
        let started = Instant::now();
        let stats = self.base_stats();
        let n = self.store.universe();
        let targets = targets.iter().map(|t| normalize(t, n)).collect::<Result<Vec<_>, _>>()?;
        let start = self.family_of(starts)?;
        let hit = |store: &ZddStore, z: NodeRef| targets.iter().any(|t| store.contains_unchecked(z, t));
        let trace = self.bfs_layers(start, hit, progress)?;
        let top = trace.last_layer();
        let reached = targets.iter().find(|t| self.store.contains_unchecked(top, t)).cloned();
        let mut stats = self.finish(stats, &trace, started);
        Ok(match reached {
            Some(t) => {
                let rec = self.reconstruct_sequence(&trace, &t)?;
                stats.membership_tests = rec.membership_tests;
                ReconfResult {
                    outcome: Outcome::Reachable { length: trace.depth() },
                    sequence: rec.sequence,
                    witness: None,
                    stats,
                }
            }
            None => ReconfResult { outcome: Outcome::Unreachable, sequence: Vec::new(), witness: None, stats },
        })
    }

    /// A member of the last non-empty layer, with a sequence reaching it.
    pub fn solve_farthest(
        &mut self,
        starts: &[Vec<u32>],
        progress: &mut dyn FnMut(usize, &LayerStat),
    ) -> Result<ReconfResult, SearchError> {
        if starts.is_empty() {
            return Err(SearchError::InvalidInstance("farthest needs a start set".into()));
        }
        let started = Instant::now();
        let stats = self.base_stats();
        let start = self.family_of(starts)?;
        let trace = self.bfs_layers(start, |_, _| false, progress)?;
        let witness = self.store.lex_min(trace.last_layer())?;
        let rec = self.reconstruct_sequence(&trace, &witness)?;
        let mut stats = self.finish(stats, &trace, started);
        stats.membership_tests = rec.membership_tests;
        Ok(ReconfResult {
            outcome: Outcome::Farthest { distance: trace.depth() },
            sequence: rec.sequence,
            witness: Some(witness),
            stats,
        })
    }

    /// Whether the whole solution space is one component, probed from a
    /// uniformly sampled member.
    pub fn solve_connectivity(
        &mut self,
        seed: u64,
        progress: &mut dyn FnMut(usize, &LayerStat),
    ) -> Result<ReconfResult, SearchError> {
        if self.solution_space == NodeRef::BOTTOM {
            return Err(SearchError::EmptySolutionSpace);
        }
        let started = Instant::now();
        let stats = self.base_stats();
        let sample = self.store.sample_uniform(self.solution_space, seed)?;
        let start = self.store.singleton(&sample)?;
        let trace = self.bfs_layers(start, |_, _| false, progress)?;
        let connected = trace.visited == trace.solution_space;
        Ok(ReconfResult {
            outcome: if connected { Outcome::Connected } else { Outcome::Disconnected },
            sequence: Vec::new(),
            witness: Some(sample),
            stats: self.finish(stats, &trace, started),
        })
    }

    /// Best reachable object; ties go to the layer closest to the start.
    pub fn solve_optimization(
        &mut self,
        starts: &[Vec<u32>],
        objective: &Objective,
        progress: &mut dyn FnMut(usize, &LayerStat),
    ) -> Result<ReconfResult, SearchError> {
        if starts.is_empty() {
            return Err(SearchError::InvalidInstance("optimization needs a start set".into()));
        }
        let started = Instant::now();
        let stats = self.base_stats();
        let start = self.family_of(starts)?;
        let mut trace = self.bfs_layers(start, |_, _| false, progress)?;
        let mut best: Option<(i64, usize, Vec<u32>)> = None;
        for (i, &layer) in trace.layers.iter().enumerate() {
            let (value, set) = self.store.extract_best(layer, objective)?;
            if best.as_ref().is_none_or(|(bv, _, _)| objective.better(value, *bv)) {
                best = Some((value, i, set));
            }
        }
        let (value, index, set) = best.ok_or(SearchError::Internal("no layers".into()))?;
        // backtrack from the chosen layer as if it were the top one
        let full = trace.layers.len();
        trace.layers.truncate(index + 1);
        let rec = self.reconstruct_sequence(&trace, &set)?;
        let mut stats = self.finish(stats, &trace, started);
        stats.layers.truncate(full);
        stats.membership_tests = rec.membership_tests;
        Ok(ReconfResult {
            outcome: Outcome::Optimal { value, length: index },
            sequence: rec.sequence,
            witness: Some(set),
            stats,
        })
    }
}

/// Builds the solution space and runs the instance's variant.
pub fn solve(
    inst: &ReconfInstance,
    limits: SearchLimits,
    seed: u64,
    progress: &mut dyn FnMut(usize, &LayerStat),
) -> Result<ReconfResult, SearchError> {
    let started = Instant::now();
    let mut problem = Problem::from_instance(inst, limits)?;
    let mut result = match inst.variant {
        Variant::Reachability | Variant::Shortest => problem.solve_reachability(&inst.starts, &inst.targets, progress),
        Variant::Farthest => problem.solve_farthest(&inst.starts, progress),
        Variant::Connectivity => problem.solve_connectivity(seed, progress),
        Variant::Optimization => {
            let objective = inst
                .objective
                .as_ref()
                .ok_or_else(|| SearchError::InvalidInstance("optimization needs an objective".into()))?;
            problem.solve_optimization(&inst.starts, objective, progress)
        }
    }?;
    result.stats.elapsed = started.elapsed();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::ObjectKind;

    fn triangle() -> Graph {
        Graph::new(3, false, [(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, false, [(1, 2), (2, 3)]).unwrap()
    }

    fn instance(graph: Graph, model: Model, variant: Variant, k: u32, starts: &[&[u32]], targets: &[&[u32]]) -> ReconfInstance {
        ReconfInstance {
            graph,
            class: ObjectKind::IndependentSet.into(),
            model,
            variant,
            threshold: k,
            starts: starts.iter().map(|s| s.to_vec()).collect(),
            targets: targets.iter().map(|s| s.to_vec()).collect(),
            objective: None,
        }
    }

    fn run(inst: &ReconfInstance) -> ReconfResult {
        solve(inst, SearchLimits::default(), 7, &mut |_, _| {}).unwrap()
    }

    fn list(s: &ZddStore, z: NodeRef) -> Vec<Vec<u32>> {
        let mut v = s.enumerate(z, usize::MAX);
        v.sort();
        v
    }

    #[test]
    fn solution_space_examples() {
        let inst = instance(triangle(), Model::Tj, Variant::Reachability, 1, &[], &[]);
        let mut s = ZddStore::new(3);
        let z = build_solution_space(&mut s, &inst).unwrap();
        assert_eq!(list(&s, z), vec![vec![1], vec![2], vec![3]]);

        let inst = instance(path3(), Model::Tar, Variant::Reachability, 0, &[], &[]);
        let mut s = ZddStore::new(3);
        let z = build_solution_space(&mut s, &inst).unwrap();
        assert_eq!(list(&s, z), vec![vec![], vec![1], vec![1, 3], vec![2], vec![3]]);

        let inst = instance(triangle(), Model::Tj, Variant::Reachability, 0, &[&[1, 2]], &[]);
        let mut s = ZddStore::new(3);
        assert!(matches!(build_solution_space(&mut s, &inst), Err(SearchError::InfeasibleStart(v)) if v == vec![1, 2]));
    }

    #[test]
    fn bfs_layer_examples() {
        let inst = instance(triangle(), Model::Tj, Variant::Farthest, 1, &[&[1]], &[]);
        let mut p = Problem::from_instance(&inst, SearchLimits::default()).unwrap();
        let start = p.family_of(&[vec![1]]).unwrap();
        let trace = p.bfs_layers(start, |_, _| false, &mut |_, _| {}).unwrap();
        assert_eq!(trace.layers.len(), 2);
        assert_eq!(list(&p.store, trace.layers[1]), vec![vec![2], vec![3]]);
        assert!(trace.closed);
        let rec = p.reconstruct_sequence(&trace, &[3]).unwrap();
        assert_eq!(rec.sequence, vec![vec![1], vec![3]]);

        let inst = instance(path3(), Model::Ts, Variant::Farthest, 0, &[&[1]], &[]);
        let mut p = Problem::from_instance(&inst, SearchLimits::default()).unwrap();
        let start = p.family_of(&[vec![1]]).unwrap();
        let trace = p.bfs_layers(start, |_, _| false, &mut |_, _| {}).unwrap();
        let layers: Vec<_> = trace.layers.iter().map(|&l| list(&p.store, l)).collect();
        assert_eq!(layers, vec![vec![vec![1]], vec![vec![2]], vec![vec![3]]]);
        let rec = p.reconstruct_sequence(&trace, &[3]).unwrap();
        assert_eq!(rec.sequence, vec![vec![1], vec![2], vec![3]]);

        let trace = p.bfs_layers(NodeRef::BOTTOM, |_, _| false, &mut |_, _| {}).unwrap();
        assert_eq!(trace.layers, vec![NodeRef::BOTTOM]);
    }

    #[test]
    fn reachability_examples() {
        let r = run(&instance(triangle(), Model::Tj, Variant::Reachability, 1, &[&[1]], &[&[3]]));
        assert_eq!(r.outcome, Outcome::Reachable { length: 1 });
        assert_eq!(r.sequence, vec![vec![1], vec![3]]);

        let two_edges = Graph::new(4, false, [(1, 2), (3, 4)]).unwrap();
        let r = run(&instance(two_edges, Model::Tj, Variant::Shortest, 2, &[&[1, 3]], &[&[2, 4]]));
        assert_eq!(r.outcome, Outcome::Reachable { length: 2 });
        assert_eq!(r.sequence.len(), 3);

        let r = run(&instance(path3(), Model::Ts, Variant::Reachability, 0, &[&[2]], &[&[2]]));
        assert_eq!(r.outcome, Outcome::Reachable { length: 0 });
        assert_eq!(r.sequence, vec![vec![2]]);
    }

    #[test]
    fn unreachable_when_frozen() {
        let g = Graph::empty(2);
        let r = run(&instance(g, Model::Ts, Variant::Reachability, 1, &[&[1]], &[&[2]]));
        assert_eq!(r.outcome, Outcome::Unreachable);
        assert!(r.sequence.is_empty());
    }

    #[test]
    fn farthest_examples() {
        let r = run(&instance(path3(), Model::Ts, Variant::Farthest, 0, &[&[1]], &[]));
        assert_eq!(r.outcome, Outcome::Farthest { distance: 2 });
        assert_eq!(r.witness, Some(vec![3]));

        let r = run(&instance(Graph::empty(2), Model::Ts, Variant::Farthest, 1, &[&[1]], &[]));
        assert_eq!(r.outcome, Outcome::Farthest { distance: 0 });
        assert_eq!(r.witness, Some(vec![1]));

        let r = run(&instance(triangle(), Model::Tj, Variant::Farthest, 1, &[&[1]], &[]));
        assert_eq!(r.outcome, Outcome::Farthest { distance: 1 });
        assert_eq!(r.witness, Some(vec![2]));
    }

    #[test]
    fn connectivity_examples() {
        let r = run(&instance(triangle(), Model::Tj, Variant::Connectivity, 1, &[], &[]));
        assert_eq!(r.outcome, Outcome::Connected);
        let r = run(&instance(Graph::empty(2), Model::Ts, Variant::Connectivity, 1, &[], &[]));
        assert_eq!(r.outcome, Outcome::Disconnected);
        let r = run(&instance(Graph::empty(1), Model::Ts, Variant::Connectivity, 1, &[], &[]));
        assert_eq!(r.outcome, Outcome::Connected);
        // empty solution space
        let inst = instance(triangle(), Model::Tj, Variant::Connectivity, 2, &[], &[]);
        assert!(matches!(solve(&inst, SearchLimits::default(), 1, &mut |_, _| {}), Err(SearchError::EmptySolutionSpace)));
    }

    #[test]
    fn optimization_examples() {
        let mut inst = instance(path3(), Model::Tar, Variant::Optimization, 0, &[&[]], &[]);
        inst.objective = Some(Objective::MaxCardinality);
        let r = run(&inst);
        assert_eq!(r.outcome, Outcome::Optimal { value: 2, length: 2 });
        assert_eq!(r.witness, Some(vec![1, 3]));
        assert_eq!(r.sequence.len(), 3);

        let mut inst = instance(path3(), Model::Tar, Variant::Optimization, 0, &[&[1, 3]], &[]);
        inst.objective = Some(Objective::MaxCardinality);
        let r = run(&inst);
        assert_eq!(r.sequence, vec![vec![1, 3]]);

        let mut inst = instance(triangle(), Model::Tj, Variant::Optimization, 1, &[&[2]], &[]);
        inst.objective = Some(Objective::MaxCardinality);
        let r = run(&inst);
        assert_eq!(r.outcome, Outcome::Optimal { value: 1, length: 0 });
        assert_eq!(r.witness, Some(vec![2]));

        inst.objective = None;
        assert!(matches!(solve(&inst, SearchLimits::default(), 1, &mut |_, _| {}), Err(SearchError::InvalidInstance(_))));
    }

    #[test]
    fn limits_surface_as_exhaustion() {
        let inst = instance(path3(), Model::Ts, Variant::Farthest, 0, &[&[1]], &[]);
        let limits = SearchLimits { max_layers: Some(1), ..SearchLimits::default() };
        assert!(matches!(solve(&inst, limits, 1, &mut |_, _| {}), Err(SearchError::Exhausted(_))));
        let limits = SearchLimits { max_nodes: Some(3), ..SearchLimits::default() };
        assert!(matches!(solve(&inst, limits, 1, &mut |_, _| {}), Err(SearchError::Exhausted(_))));
    }

    #[test]
    fn progress_sees_every_layer() {
        let inst = instance(path3(), Model::Ts, Variant::Farthest, 0, &[&[1]], &[]);
        let mut seen = Vec::new();
        solve(&inst, SearchLimits::default(), 1, &mut |i, s| seen.push((i, s.members.clone()))).unwrap();
        assert_eq!(seen, vec![(0, 1u32.into()), (1, 1u32.into()), (2, 1u32.into())]);
    }
}
