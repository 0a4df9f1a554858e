//! Solution-space families built by set-family algebra.
//!
//! Each object kind is a big intersection of simple clauses
//! `X_v ∪ X_w`, `X̄_v ∪ X̄_w`, or `X_v ∪ ⋃ X_w`. Clauses are applied to a
//! running family `F` through `F ∩ (⋃_u C_u) = ⋃_u (F ∩ C_u)`, where each
//! `F ∩ X_u` / `F ∩ X̄_u` is a single [`ZddStore::with`] / [`ZddStore::without`]
//! pass. No clause diagram over the whole universe is materialized.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;
use crate::zdd::{NodeRef, ZddStore};

/// Which reconfiguration objects make up the solution space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    IndependentSet,
    VertexCover,
    DominatingSet,
    Clique,
    /// No two members at distance `1..=k`.
    DistanceIndependentSet(u32),
    /// Every vertex within distance `k` of a member.
    DistanceDominatingSet(u32),
    /// Edge subsets with no two edges sharing an endpoint.
    Matching,
}

impl ObjectKind {
    pub fn uses_edge_universe(self) -> bool {
        self == ObjectKind::Matching
    }

    /// Size of the universe this kind lives on.
    pub fn universe_size(self, g: &Graph) -> u32 {
        if self.uses_edge_universe() {
            g.edge_count() as u32
        } else {
            g.vertex_count()
        }
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectKind::IndependentSet => f.write_str("independent-set"),
            ObjectKind::VertexCover => f.write_str("vertex-cover"),
            ObjectKind::DominatingSet => f.write_str("dominating-set"),
            ObjectKind::Clique => f.write_str("clique"),
            ObjectKind::DistanceIndependentSet(k) => write!(f, "distance-independent-set:{k}"),
            ObjectKind::DistanceDominatingSet(k) => write!(f, "distance-dominating-set:{k}"),
            ObjectKind::Matching => f.write_str("matching"),
        }
    }
}

impl FromStr for ObjectKind {
    type Err = String;

    /// Accepts the `Display` names; distance kinds take `:k` (default 1).
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, k) = match s.split_once(':') {
            Some((name, k)) => {
                let k: u32 = k.parse().map_err(|_| format!("bad distance `{k}`"))?;
                if k == 0 {
                    return Err("distance must be at least 1".into());
                }
                (name, k)
            }
            None => (s, 1),
        };
        Ok(match name {
            "independent-set" | "is" => ObjectKind::IndependentSet,
            "vertex-cover" | "vc" => ObjectKind::VertexCover,
            "dominating-set" | "ds" => ObjectKind::DominatingSet,
            "clique" => ObjectKind::Clique,
            "distance-independent-set" | "dis" => ObjectKind::DistanceIndependentSet(k),
            "distance-dominating-set" | "dds" => ObjectKind::DistanceDominatingSet(k),
            "matching" => ObjectKind::Matching,
            other => return Err(format!("unknown object kind `{other}`")),
        })
    }
}

/// Keep only inclusion-maximal or inclusion-minimal members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremal {
    Maximal,
    Minimal,
}

impl FromStr for Extremal {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "maximal" => Ok(Extremal::Maximal),
            "minimal" => Ok(Extremal::Minimal),
            other => Err(format!("unknown filter `{other}` (expected maximal or minimal)")),
        }
    }
}

/// Object kind plus an optional maximal/minimal filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObjectClass {
    pub kind: ObjectKind,
    pub filter: Option<Extremal>,
}

impl From<ObjectKind> for ObjectClass {
    fn from(kind: ObjectKind) -> Self {
        ObjectClass { kind, filter: None }
    }
}

/// Whether a clause literal requires the element present or absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    In,
    Out,
}

/// `X_v` (polarity `In`) or `X̄_v` (polarity `Out`) over the store's universe.
pub fn elementary(store: &mut ZddStore, v: u32, polarity: Polarity) -> NodeRef {
    let all = store.power_set();
    match polarity {
        Polarity::In => store.with(all, v),
        Polarity::Out => store.without(all, v),
    }
}

/// `F ∩ ⋃_u L_u` for literals `L_u` of one polarity.
fn restrict_any(store: &mut ZddStore, f: NodeRef, elems: &[u32], polarity: Polarity) -> NodeRef {
    let mut acc = NodeRef::BOTTOM;
    for &u in elems {
        let part = match polarity {
            Polarity::In => store.with(f, u),
            Polarity::Out => store.without(f, u),
        };
        acc = store.union(acc, part);
    }
    acc
}

/// Pairwise "not both" clauses, applied from the largest smaller endpoint
/// down so every pass only rebuilds the nearly unconstrained top part.
fn forbid_pairs(store: &mut ZddStore, mut pairs: Vec<(u32, u32)>) -> NodeRef {
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    pairs.dedup();
    let mut f = store.power_set();
    for (v, w) in pairs {
        f = restrict_any(store, f, &[v, w], Polarity::Out);
        store.clear_caches();
    }
    f
}

/// Covering clauses `X_v ∪ ⋃_{w ∈ group} X_w`, one per vertex.
fn require_groups(store: &mut ZddStore, mut groups: Vec<Vec<u32>>) -> NodeRef {
    groups.sort_unstable_by(|a, b| b.first().cmp(&a.first()));
    let mut f = store.power_set();
    for g in groups {
        f = restrict_any(store, f, &g, Polarity::In);
        store.clear_caches();
    }
    f
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Builds the family of all objects of `class` in `g`. The store's universe
/// must match [`ObjectKind::universe_size`].
pub fn build_family(store: &mut ZddStore, g: &Graph, class: ObjectClass) -> NodeRef {
    assert_eq!(store.universe(), class.kind.universe_size(g), "store universe does not match object kind");
    let n = g.vertex_count();
    let base = match class.kind {
        ObjectKind::IndependentSet => {
            let pairs = g.edges().iter().map(|&(u, v)| ordered(u, v)).collect();
            forbid_pairs(store, pairs)
        }
        ObjectKind::VertexCover => {
            let groups = g.edges().iter().map(|&(u, v)| vec![u.min(v), u.max(v)]).collect();
            require_groups(store, groups)
        }
        ObjectKind::Clique => forbid_pairs(store, g.complement().edges().to_vec()),
        ObjectKind::DominatingSet => {
            let nb = g.neighbors();
            let groups = (1..=n)
                .map(|v| {
                    let mut c = nb.get(v).to_vec();
                    c.push(v);
                    c.sort_unstable();
                    c
                })
                .collect();
            require_groups(store, groups)
        }
        ObjectKind::DistanceIndependentSet(k) => {
            let mut pairs = Vec::new();
            for v in 1..=n {
                for w in g.within_distance(v, k) {
                    if v < w {
                        pairs.push((v, w));
                    }
                }
            }
            forbid_pairs(store, pairs)
        }
        ObjectKind::DistanceDominatingSet(k) => {
            let groups = (1..=n)
                .map(|v| {
                    let mut c = g.within_distance(v, k);
                    c.push(v);
                    c.sort_unstable();
                    c
                })
                .collect();
            require_groups(store, groups)
        }
        ObjectKind::Matching => {
            let en = g.edge_neighbors();
            let mut pairs = Vec::new();
            for e in 1..=en.len() {
                for &f in en.get(e) {
                    if e < f {
                        pairs.push((e, f));
                    }
                }
            }
            forbid_pairs(store, pairs)
        }
    };
    let r = match class.filter {
        None => base,
        Some(Extremal::Maximal) => store.maximal(base),
        Some(Extremal::Minimal) => store.minimal(base),
    };
    store.clear_caches();
    r
}
