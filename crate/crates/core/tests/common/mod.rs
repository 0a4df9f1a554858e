#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use zdd_reconf::builders::{Extremal, ObjectClass, ObjectKind};
use zdd_reconf::io::{reorder, VariableOrder};
use zdd_reconf::oracle::{self, explicit_bfs, ExplicitFamily, Moves};
use zdd_reconf::search::{solve, Outcome, ReconfInstance, ReconfResult, SearchLimits, Variant};
use zdd_reconf::{Graph, Model, NeighborMap, NodeRef, Objective, ZddStore};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset(rng: &mut impl Rng, n: u32, p: f64) -> Vec<u32> {
    (1..=n).filter(|_| rng.gen_bool(p)).collect()
}

/// Up to `max_sets` random subsets of `1..=n`, possibly with repeats.
pub fn random_sets(rng: &mut impl Rng, n: u32, max_sets: usize) -> Vec<Vec<u32>> {
    let count = rng.gen_range(0..=max_sets);
    let p = rng.gen_range(0.2..0.8);
    (0..count).map(|_| random_subset(rng, n, p)).collect()
}

pub fn random_graph(rng: &mut impl Rng, n: u32, p: f64, directed: bool) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && (directed || u < v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, directed, edges).unwrap()
}

pub fn arcs_of(map: &NeighborMap) -> std::collections::HashSet<(u32, u32)> {
    let mut arcs = std::collections::HashSet::new();
    for x in 1..=map.len() {
        for &y in map.get(x) {
            arcs.insert((x, y));
        }
    }
    arcs
}

/// Members of a diagram as an explicit family.
pub fn explicit(store: &ZddStore, z: NodeRef) -> ExplicitFamily {
    oracle::dump(store, z, 1 << 20).unwrap()
}

/// An induced path in the hypercube on `2 * half + 1` coordinates, as a
/// family of sets: the path visits every member once, from `start` to
/// `end`, in `length` single-element toggles.
pub struct Snake {
    pub store: ZddStore,
    pub family: NodeRef,
    pub start: Vec<u32>,
    pub end: Vec<u32>,
    pub length: usize,
}

pub fn snake(half: u32) -> Snake {
    snake_in(half, 2 * half + 1)
}

/// Like [`snake`], inside a larger universe whose extra elements are never used.
pub fn snake_in(half: u32, universe: u32) -> Snake {
    let n = 2 * half + 1;
    assert!(universe >= n);
    let mut store = ZddStore::new(universe);
    let mut z = store.make_node(n, NodeRef::TOP, NodeRef::TOP).unwrap();
    let start: Vec<u32> = Vec::new();
    let mut end = vec![n];
    let mut length = 1usize;
    let mut t = n;
    while t > 1 {
        t -= 2;
        // path P over t+2.., then end+{t+1}, then P reversed with {t, t+1}
        let bridge = store.singleton(&end).unwrap();
        let without_t = store.make_node(t + 1, z, bridge).unwrap();
        let with_t = store.make_node(t + 1, NodeRef::BOTTOM, z).unwrap();
        z = store.make_node(t, without_t, with_t).unwrap();
        end = start.iter().copied().chain([t, t + 1]).collect();
        end.sort_unstable();
        length = 2 * length + 2;
    }
    Snake { store, family: z, start, end, length }
}

pub const KINDS: [ObjectKind; 5] = [
    ObjectKind::IndependentSet,
    ObjectKind::VertexCover,
    ObjectKind::DominatingSet,
    ObjectKind::Clique,
    ObjectKind::Matching,
];

pub const MODELS: [Model; 3] = [Model::Tar, Model::Tj, Model::Ts];

pub const VARIANTS: [Variant; 5] =
    [Variant::Reachability, Variant::Shortest, Variant::Farthest, Variant::Connectivity, Variant::Optimization];

/// The explicit solution space of `inst`.
pub fn explicit_space(inst: &ReconfInstance) -> ExplicitFamily {
    oracle::enumerate_predicate(&inst.graph, inst.class)
        .unwrap()
        .filter(|s| s.len() as u32 >= inst.threshold)
}

pub fn moves_of(inst: &ReconfInstance) -> Moves {
    Moves::for_graph(inst.model, &inst.graph, inst.class.kind)
}

/// A random small instance with non-empty solution space; starts and
/// targets are drawn from its members.
pub fn random_instance(rng: &mut impl Rng) -> ReconfInstance {
    loop {
        let kind = *KINDS.choose(rng).unwrap();
        let model = *MODELS.choose(rng).unwrap();
        let variant = *VARIANTS.choose(rng).unwrap();
        let n = rng.gen_range(1..=if kind == ObjectKind::Matching { 7 } else { 9 });
        let directed = model == Model::Ts && kind != ObjectKind::Matching && rng.gen_bool(0.2);
        let p = rng.gen_range(0.15..0.7);
        let mut graph = random_graph(rng, n, p, directed);
        if kind == ObjectKind::Matching && graph.edge_count() > 12 {
            graph = Graph::new(n, false, graph.edges()[..12].iter().copied()).unwrap();
        }
        let filter = match rng.gen_range(0..10) {
            0 => Some(Extremal::Maximal),
            1 => Some(Extremal::Minimal),
            _ => None,
        };
        let threshold = *[0, 0, 0, 1, 2].choose(rng).unwrap();
        let mut inst = ReconfInstance {
            graph,
            class: ObjectClass { kind, filter },
            model,
            variant,
            threshold,
            starts: Vec::new(),
            targets: Vec::new(),
            objective: None,
        };
        let space = explicit_space(&inst);
        if space.is_empty() {
            continue;
        }
        let pick = |rng: &mut dyn rand::RngCore| space.sets()[rng.gen_range(0..space.len())].clone();
        let starts = rng.gen_range(1..=2);
        inst.starts = (0..starts).map(|_| pick(rng)).collect();
        let targets = rng.gen_range(1..=2);
        inst.targets = (0..targets).map(|_| pick(rng)).collect();
        let universe = kind.universe_size(&inst.graph) as usize;
        let weights: Vec<i64> = (0..universe).map(|_| rng.gen_range(-4..=9)).collect();
        inst.objective = Some(match rng.gen_range(0..4) {
            0 => Objective::MaxCardinality,
            1 => Objective::MinCardinality,
            2 => Objective::MaxWeight(weights),
            _ => Objective::MinWeight(weights),
        });
        return inst;
    }
}

/// Solves `inst` under a random variable order and maps the answer back.
pub fn solve_reordered(inst: &ReconfInstance, rng: &mut impl Rng, seed: u64) -> ReconfResult {
    let order = *[VariableOrder::Input, VariableOrder::Bfs, VariableOrder::Reverse].choose(rng).unwrap();
    let (re, map) = reorder(inst, order);
    let mut r = solve(&re, SearchLimits::default(), seed, &mut |_, _| {}).unwrap();
    map.restore(&mut r);
    r
}

fn dist_of(family: &ExplicitFamily, dist: &[Option<usize>], set: &[u32]) -> Option<usize> {
    family.position(set).and_then(|i| dist[i])
}

/// Compares a solver answer with explicit-state search and checks every
/// emitted sequence against the definitions.
pub fn check_against_oracle(inst: &ReconfInstance, res: &ReconfResult) -> Result<(), String> {
    let space = explicit_space(inst);
    let moves = moves_of(inst);
    let dist = explicit_bfs(&space, &moves, &inst.starts).map_err(|e| e.to_string())?;
    let norm = |s: &Vec<u32>| {
        let mut s = s.clone();
        s.sort_unstable();
        s
    };
    let starts: Vec<Vec<u32>> = inst.starts.iter().map(norm).collect();
    let certify = |seq: &[Vec<u32>], len: usize| -> Result<(), String> {
        oracle::check_sequence(&inst.graph, inst.class, inst.threshold, &moves, seq)?;
        if seq.len() != len + 1 {
            return Err(format!("sequence has {} steps, expected {}", seq.len(), len + 1));
        }
        if !starts.contains(&seq[0]) {
            return Err(format!("sequence starts at {:?}, not a start", seq[0]));
        }
        Ok(())
    };
    match inst.variant {
        Variant::Reachability | Variant::Shortest => {
            let best = inst.targets.iter().filter_map(|t| dist_of(&space, &dist, &norm(t))).min();
            match (best, &res.outcome) {
                (None, Outcome::Unreachable) => Ok(()),
                (Some(d), Outcome::Reachable { length }) if d == *length => {
                    certify(&res.sequence, d)?;
                    let last = res.sequence.last().unwrap();
                    if !inst.targets.iter().any(|t| &norm(t) == last) {
                        return Err(format!("sequence ends at {last:?}, not a target"));
                    }
                    Ok(())
                }
                (want, got) => Err(format!("expected distance {want:?}, got {got:?}")),
            }
        }
        Variant::Farthest => {
            let far = dist.iter().flatten().copied().max().unwrap();
            let Outcome::Farthest { distance } = res.outcome else {
                return Err(format!("unexpected outcome {:?}", res.outcome));
            };
            let w = res.witness.clone().ok_or("missing witness")?;
            if distance != far || dist_of(&space, &dist, &w) != Some(far) {
                return Err(format!("expected distance {far}, got {distance} with witness {w:?}"));
            }
            certify(&res.sequence, far)?;
            if res.sequence.last() != Some(&w) {
                return Err("sequence does not end at the witness".into());
            }
            Ok(())
        }
        Variant::Connectivity => {
            let from_first = explicit_bfs(&space, &moves, &space.sets()[..1]).map_err(|e| e.to_string())?;
            let connected = from_first.iter().all(Option::is_some);
            let w = res.witness.clone().ok_or("missing witness")?;
            if !space.contains(&w) {
                return Err(format!("sampled start {w:?} is not feasible"));
            }
            match (&res.outcome, connected) {
                (Outcome::Connected, true) | (Outcome::Disconnected, false) => Ok(()),
                (got, _) => Err(format!("connected = {connected}, got {got:?}")),
            }
        }
        Variant::Optimization => {
            let objective = inst.objective.as_ref().unwrap();
            let reached = || space.sets().iter().zip(&dist).filter_map(|(s, d)| d.map(|d| (s, d)));
            let mut best: Option<i64> = None;
            for (s, _) in reached() {
                let v = objective.value_of(s);
                if best.is_none_or(|b| objective.better(v, b)) {
                    best = Some(v);
                }
            }
            let best = best.unwrap();
            let nearest = reached().filter(|(s, _)| objective.value_of(s) == best).map(|(_, d)| d).min().unwrap();
            let Outcome::Optimal { value, length } = res.outcome else {
                return Err(format!("unexpected outcome {:?}", res.outcome));
            };
            if (value, length) != (best, nearest) {
                return Err(format!("expected optimum {best} at {nearest}, got {value} at {length}"));
            }
            let w = res.witness.clone().ok_or("missing witness")?;
            if objective.value_of(&w) != best || dist_of(&space, &dist, &w) != Some(nearest) {
                return Err(format!("witness {w:?} is not an optimum at distance {nearest}"));
            }
            certify(&res.sequence, nearest)?;
            if res.sequence.last() != Some(&w) {
                return Err("sequence does not end at the witness".into());
            }
            Ok(())
        }
    }
}
