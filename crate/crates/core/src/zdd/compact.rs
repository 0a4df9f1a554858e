use rustc_hash::FxHashMap;

use super::{Node, NodeRef, ZddStore};

impl ZddStore {
    /// Discards every node not reachable from `roots` and rewrites `roots`
    /// in place. Every other `NodeRef` held by the caller is invalidated.
    /// Caches are dropped. Returns the number of live non-terminal nodes.
    pub fn compact(&mut self, roots: &mut [NodeRef]) -> usize {
        let mut live = vec![false; self.nodes.len()];
        for r in roots.iter() {
            live[r.index()] = true;
        }
        // children have smaller ids than their parents
        for i in (2..self.nodes.len()).rev() {
            if live[i] {
                let n = self.nodes[i];
                live[n.lo.index()] = true;
                live[n.hi.index()] = true;
            }
        }
        let kept = live[2..].iter().filter(|&&l| l).count();
        let mut remap = vec![u32::MAX; self.nodes.len()];
        remap[0] = 0;
        remap[1] = 1;
        let mut nodes = Vec::with_capacity(kept + 2);
        nodes.extend_from_slice(&self.nodes[..2]);
        let mut unique = FxHashMap::default();
        unique.reserve(kept);
        for i in (2..self.nodes.len()).filter(|&i| live[i]) {
            let old = self.nodes[i];
            let node = Node {
                var: old.var,
                lo: NodeRef(remap[old.lo.index()]),
                hi: NodeRef(remap[old.hi.index()]),
            };
            let id = NodeRef(nodes.len() as u32);
            remap[i] = id.0;
            nodes.push(node);
            unique.insert(node, id);
        }
        for r in roots.iter_mut() {
            *r = NodeRef(remap[r.index()]);
        }
        let count = nodes.len() - 2;
        self.nodes = nodes;
        self.unique = unique;
        self.binary_cache = FxHashMap::default();
        self.unary_cache = FxHashMap::default();
        count
    }
}
