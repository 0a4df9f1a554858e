//! Read-only queries: counting, membership, sampling, extraction, listing.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use super::{NodeRef, ZddError, ZddStore};

/// Optimization criterion for [`ZddStore::extract_best`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    MaxCardinality,
    MinCardinality,
    /// Weights indexed by element, `weights[v - 1]` for element `v`.
    MaxWeight(Vec<i64>),
    MinWeight(Vec<i64>),
}

impl Objective {
    fn weight(&self, v: u32) -> i64 {
        match self {
            Objective::MaxCardinality | Objective::MinCardinality => 1,
            Objective::MaxWeight(w) | Objective::MinWeight(w) => w[v as usize - 1],
        }
    }

    fn maximize(&self) -> bool {
        matches!(self, Objective::MaxCardinality | Objective::MaxWeight(_))
    }

    /// True when `a` is strictly better than `b`.
    pub fn better(&self, a: i64, b: i64) -> bool {
        if self.maximize() {
            a > b
        } else {
            a < b
        }
    }

    /// Objective value of an explicit set.
    pub fn value_of(&self, set: &[u32]) -> i64 {
        set.iter().map(|&v| self.weight(v)).sum()
    }
}

impl ZddStore {
    /// Non-terminal nodes reachable from `roots`, children before parents.
    pub(crate) fn reachable(&self, roots: &[NodeRef]) -> Vec<NodeRef> {
        let mut seen = FxHashSet::default();
        let mut stack: Vec<NodeRef> = roots.iter().copied().filter(|r| !r.is_terminal()).collect();
        let mut out = Vec::new();
        while let Some(r) = stack.pop() {
            if !seen.insert(r) {
                continue;
            }
            out.push(r);
            let n = self.node_at(r);
            for c in [n.lo, n.hi] {
                if !c.is_terminal() && !seen.contains(&c) {
                    stack.push(c);
                }
            }
        }
        // node ids are allocated after their children
        out.sort_unstable();
        out
    }

    /// Number of non-terminal nodes in the diagram rooted at `a`.
    pub fn node_count(&self, a: NodeRef) -> usize {
        self.reachable(&[a]).len()
    }

    /// Number of non-terminal nodes shared by all the given roots.
    pub fn shared_node_count(&self, roots: &[NodeRef]) -> usize {
        self.reachable(roots).len()
    }

    fn counts(&self, a: NodeRef) -> FxHashMap<NodeRef, BigUint> {
        let mut memo: FxHashMap<NodeRef, BigUint> = FxHashMap::default();
        memo.insert(NodeRef::BOTTOM, BigUint::zero());
        memo.insert(NodeRef::TOP, BigUint::one());
        for r in self.reachable(&[a]) {
            let n = self.node_at(r);
            let c = &memo[&n.lo] + &memo[&n.hi];
            memo.insert(r, c);
        }
        memo
    }

    /// Exact number of members of `a`.
    pub fn count(&self, a: NodeRef) -> BigUint {
        self.counts(a).remove(&a).unwrap_or_default()
    }

    /// Membership test in `O(n)` node steps.
    pub fn contains(&self, a: NodeRef, set: &[u32]) -> Result<bool, ZddError> {
        self.check_set(set)?;
        Ok(self.contains_unchecked(a, set))
    }

    pub(crate) fn contains_unchecked(&self, a: NodeRef, set: &[u32]) -> bool {
        let mut f = a;
        for &x in set {
            while self.var(f) < x {
                f = self.node_at(f).lo;
            }
            if f.is_terminal() || self.var(f) != x {
                return false;
            }
            f = self.node_at(f).hi;
        }
        while !f.is_terminal() {
            f = self.node_at(f).lo;
        }
        f == NodeRef::TOP
    }

    /// Uniform random member of `a`, reproducible for a fixed seed.
    pub fn sample_uniform(&self, a: NodeRef, seed: u64) -> Result<Vec<u32>, ZddError> {
        if a == NodeRef::BOTTOM {
            return Err(ZddError::EmptyFamily);
        }
        let counts = self.counts(a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = rng.gen_biguint_below(&counts[&a]);
        let mut out = Vec::new();
        let mut f = a;
        while !f.is_terminal() {
            let n = self.node_at(f);
            let lo_count = &counts[&n.lo];
            if pick < *lo_count {
                f = n.lo;
            } else {
                pick -= lo_count;
                out.push(n.var);
                f = n.hi;
            }
        }
        debug_assert_eq!(f, NodeRef::TOP);
        Ok(out)
    }

    /// A member optimizing `objective`, with its value. On ties the branch
    /// without the current element wins, which yields the smallest optimal
    /// characteristic vector.
    pub fn extract_best(&self, a: NodeRef, objective: &Objective) -> Result<(i64, Vec<u32>), ZddError> {
        if a == NodeRef::BOTTOM {
            return Err(ZddError::EmptyFamily);
        }
        if let Objective::MaxWeight(w) | Objective::MinWeight(w) = objective {
            if w.len() != self.universe as usize {
                return Err(ZddError::WeightLength { got: w.len(), universe: self.universe });
            }
        }
        // best[r] = (value, take_hi)
        let mut best: FxHashMap<NodeRef, (i64, bool)> = FxHashMap::default();
        best.insert(NodeRef::TOP, (0, false));
        for r in self.reachable(&[a]) {
            let n = self.node_at(r);
            let lo = (n.lo != NodeRef::BOTTOM).then(|| best[&n.lo].0);
            let hi = best[&n.hi].0 + objective.weight(n.var);
            let entry = match lo {
                Some(lv) if !objective.better(hi, lv) => (lv, false),
                _ => (hi, true),
            };
            best.insert(r, entry);
        }
        let value = best[&a].0;
        let mut out = Vec::new();
        let mut f = a;
        while !f.is_terminal() {
            let n = self.node_at(f);
            if best[&f].1 {
                out.push(n.var);
                f = n.hi;
            } else {
                f = n.lo;
            }
        }
        Ok((value, out))
    }

    /// Smallest member when sets are compared as ascending element sequences.
    pub fn lex_min(&self, a: NodeRef) -> Result<Vec<u32>, ZddError> {
        if a == NodeRef::BOTTOM {
            return Err(ZddError::EmptyFamily);
        }
        let mut out = Vec::new();
        let mut f = a;
        loop {
            let mut g = f;
            while !g.is_terminal() {
                g = self.node_at(g).lo;
            }
            if g == NodeRef::TOP {
                return Ok(out);
            }
            // the root label is the smallest element of any member
            let n = self.node_at(f);
            out.push(n.var);
            f = n.hi;
        }
    }

    /// Up to `limit` members, ordered by characteristic vector
    /// `(x_1, ..., x_n)` with absent before present.
    pub fn enumerate(&self, a: NodeRef, limit: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate_rec(a, limit, &mut prefix, &mut out);
        out
    }

    fn enumerate_rec(&self, f: NodeRef, limit: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if out.len() >= limit || f == NodeRef::BOTTOM {
            return;
        }
        if f == NodeRef::TOP {
            out.push(prefix.clone());
            return;
        }
        let n = self.node_at(f);
        self.enumerate_rec(n.lo, limit, prefix, out);
        prefix.push(n.var);
        self.enumerate_rec(n.hi, limit, prefix, out);
        prefix.pop();
    }

    /// Text listing: one set per line, ascending elements separated by
    /// spaces, lines ordered by element sequence, `∅` as an empty line.
    pub fn dump_text(&self, a: NodeRef, bound: usize) -> Result<String, ZddError> {
        if self.count(a) > BigUint::from(bound) {
            return Err(ZddError::TooLarge { bound });
        }
        let mut sets = self.enumerate(a, usize::MAX);
        sets.sort();
        let mut s = String::new();
        for set in sets {
            let line: Vec<String> = set.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        Ok(s)
    }
}

/// Three-significant-digit scientific form, e.g. `3.07e361`.
pub fn scientific(n: &BigUint) -> String {
    if n.is_zero() {
        return "0.00e0".to_string();
    }
    let digits = n.to_string();
    let mut exp = digits.len() - 1;
    let padded = format!("{digits:0<4}");
    let mut lead: u32 = padded[..3].parse().unwrap();
    if padded.as_bytes()[3] >= b'5' {
        lead += 1;
        if lead == 1000 {
            lead = 100;
            exp += 1;
        }
    }
    format!("{}.{:02}e{}", lead / 100, lead % 100, exp)
}
