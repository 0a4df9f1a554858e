//! Simple graphs and digraphs over vertices `1..=n`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::ops::NeighborMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
}

/// A simple graph. Undirected edges are stored as `(u, v)` with `u < v`;
/// arcs keep their direction. Edges are sorted and duplicate-free, and the
/// edge universe numbers them `1..=m` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    directed: bool,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(n: u32, directed: bool, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        Self::with_duplicates(n, directed, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::new`], also reporting how many duplicate edges were dropped.
    pub fn with_duplicates(
        n: u32,
        directed: bool,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<(Self, usize), GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(if directed || u < v { (u, v) } else { (v, u) });
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        let dups = before - list.len();
        Ok((Graph { n, directed, edges: list }, dups))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: u32) -> Self {
        Graph { n, directed: false, edges: Vec::new() }
    }

    /// `rows × cols` grid, vertices numbered column by column.
    pub fn grid(rows: u32, cols: u32) -> Self {
        let id = |r: u32, c: u32| c * rows + r + 1;
        let mut edges = Vec::new();
        for c in 0..cols {
            for r in 0..rows {
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
            }
        }
        Graph::new(rows * cols, false, edges).expect("grid edges are valid")
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Endpoints of edge `e` (1-based).
    pub fn edge(&self, e: u32) -> (u32, u32) {
        self.edges[e as usize - 1]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let key = if self.directed || u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok() || (self.directed && self.edges.binary_search(&(v, u)).is_ok())
    }

    /// Adjacency ignoring arc direction, `N(v)`.
    pub fn neighbors(&self) -> NeighborMap {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        NeighborMap::from_lists(adj)
    }

    /// Heads of outgoing arcs `N+(v)`; for undirected graphs, `N(v)`.
    pub fn out_neighbors(&self) -> NeighborMap {
        if !self.directed {
            return self.neighbors();
        }
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
        }
        NeighborMap::from_lists(adj)
    }

    /// Tails of incoming arcs `N-(v)`; for undirected graphs, `N(v)`.
    pub fn in_neighbors(&self) -> NeighborMap {
        if !self.directed {
            return self.neighbors();
        }
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[v as usize].push(u);
        }
        NeighborMap::from_lists(adj)
    }

    /// Edges sharing an endpoint, over the edge universe `1..=m`.
    pub fn edge_neighbors(&self) -> NeighborMap {
        let m = self.edges.len();
        let mut incident = vec![Vec::new(); self.n as usize + 1];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            incident[u as usize].push(i as u32 + 1);
            incident[v as usize].push(i as u32 + 1);
        }
        let mut adj = vec![Vec::new(); m + 1];
        for list in &incident {
            for &e in list {
                for &f in list {
                    if e != f {
                        adj[e as usize].push(f);
                    }
                }
            }
        }
        NeighborMap::from_lists(adj)
    }

    /// Vertices at distance `1..=k` from `v`, ignoring arc direction.
    pub fn within_distance(&self, v: u32, k: u32) -> Vec<u32> {
        let adj = self.neighbors();
        let mut dist = vec![u32::MAX; self.n as usize + 1];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize];
            if d == k {
                continue;
            }
            for &w in adj.get(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Graph on the same vertices whose edges are the non-adjacent pairs.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n: self.n, directed: false, edges }
    }

    /// Renames vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u as usize - 1], perm[v as usize - 1]));
        Graph::new(self.n, self.directed, edges).expect("permutation keeps edges valid")
    }
}
