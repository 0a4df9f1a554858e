//! Text formats: DIMACS-style graphs, instance files, result listings.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::builders::ObjectKind;
use crate::graph::Graph;
use crate::search::{Outcome, ReconfInstance, ReconfResult};
use crate::zdd::{scientific, Objective};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Repeated edges dropped while normalizing.
    pub duplicates: usize,
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

fn number(word: Option<&str>, line: usize, what: &str) -> Result<u32, ParseError> {
    let w = word.ok_or_else(|| err(line, format!("missing {what}")))?;
    w.parse().map_err(|_| err(line, format!("{what} `{w}` is not a non-negative integer")))
}

/// Reads `p edge <n> <m>` followed by `m` lines `e <u> <v>`.
pub fn parse_graph(text: &str, directed: bool) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, "second problem line"));
                }
                if words.next() != Some("edge") {
                    return Err(err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = number(words.next(), line_no, "vertex count")?;
                let m = number(words.next(), line_no, "edge count")? as usize;
                header = Some((n, m, line_no));
            }
            Some("e") => {
                let Some((n, _, _)) = header else {
                    return Err(err(line_no, "edge before the `p edge` line"));
                };
                let u = number(words.next(), line_no, "endpoint")?;
                let v = number(words.next(), line_no, "endpoint")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line_no, format!("vertex {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(line_no, format!("self-loop on vertex {u}")));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(err(line_no, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
        if words.next().is_some() {
            return Err(err(line_no, "trailing tokens"));
        }
    }
    let (n, m, line_no) = header.ok_or_else(|| err(text.lines().count().max(1), "missing `p edge <n> <m>` line"))?;
    if edges.len() != m {
        return Err(err(line_no, format!("header declares {m} edges but {} were given", edges.len())));
    }
    let (graph, duplicates) = Graph::with_duplicates(n, directed, edges).map_err(|e| err(line_no, e.to_string()))?;
    Ok(ParsedGraph { graph, duplicates })
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceSets {
    pub starts: Vec<Vec<u32>>,
    pub targets: Vec<Vec<u32>>,
}

/// Reads `s …` start lines and `t …` target lines over `1..=universe`.
pub fn parse_instance(text: &str, universe: u32) -> Result<InstanceSets, ParseError> {
    let mut sets = InstanceSets::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut words = line.split_whitespace();
        let kind = words.next().unwrap();
        let mut set = Vec::new();
        for w in words {
            let x = number(Some(w), line_no, "element")?;
            if x == 0 || x > universe {
                return Err(err(line_no, format!("element {x} out of range 1..={universe}")));
            }
            set.push(x);
        }
        let before = set.len();
        set.sort_unstable();
        set.dedup();
        if set.len() != before {
            return Err(err(line_no, "repeated element"));
        }
        match kind {
            "s" => sets.starts.push(set),
            "t" => sets.targets.push(set),
            other => return Err(err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    Ok(sets)
}

fn set_line(set: &[u32]) -> String {
    let mut s = String::from("a");
    for v in set {
        let _ = write!(s, " {v}");
    }
    s
}

/// Verdict line followed by one `a …` line per sequence step.
pub fn write_result(res: &ReconfResult) -> String {
    let mut s = match &res.outcome {
        Outcome::Reachable { length } => format!("a REACHABLE {length}"),
        Outcome::Unreachable => "a UNREACHABLE".to_string(),
        Outcome::Connected => "a CONNECTED".to_string(),
        Outcome::Disconnected => "a DISCONNECTED".to_string(),
        Outcome::Farthest { distance } => format!("a FARTHEST {distance}"),
        Outcome::Optimal { value, length } => format!("a OPTIMAL {value} {length}"),
    };
    s.push('\n');
    for step in &res.sequence {
        s.push_str(&set_line(step));
        s.push('\n');
    }
    s
}

/// Statistics as `c ` lines.
pub fn write_stats(res: &ReconfResult) -> String {
    let st = &res.stats;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "c solution_space members {} ({}) nodes {}",
        st.solution_count,
        scientific(&st.solution_count),
        st.solution_nodes
    );
    for (i, l) in st.layers.iter().enumerate() {
        let _ = writeln!(s, "c layer {i} members {} ({}) nodes {}", l.members, scientific(&l.members), l.nodes);
    }
    let _ = writeln!(s, "c peak_nodes {}", st.peak_nodes);
    let _ = writeln!(s, "c membership_tests {}", st.membership_tests);
    let _ = writeln!(s, "c wall_time {:.3}s", st.elapsed.as_secs_f64());
    s
}

/// Reads back the output of [`write_result`].
pub fn parse_result(text: &str) -> Result<(Outcome, Vec<Vec<u32>>), ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| err(1, "empty result"))?;
    let words: Vec<&str> = first.split_whitespace().collect();
    let num = |i: usize| -> Result<usize, ParseError> {
        words.get(i).and_then(|w| w.parse().ok()).ok_or_else(|| err(1, "malformed verdict"))
    };
    let outcome = match words.get(1).copied() {
        Some("REACHABLE") => Outcome::Reachable { length: num(2)? },
        Some("UNREACHABLE") => Outcome::Unreachable,
        Some("CONNECTED") => Outcome::Connected,
        Some("DISCONNECTED") => Outcome::Disconnected,
        Some("FARTHEST") => Outcome::Farthest { distance: num(2)? },
        Some("OPTIMAL") => {
            let value = words.get(2).and_then(|w| w.parse().ok()).ok_or_else(|| err(1, "malformed value"))?;
            Outcome::Optimal { value, length: num(3)? }
        }
        _ => return Err(err(1, format!("unknown verdict `{first}`"))),
    };
    if words.first() != Some(&"a") {
        return Err(err(1, "verdict must start with `a`"));
    }
    let mut seq = Vec::new();
    for (i, line) in lines {
        let mut w = line.split_whitespace();
        if w.next() != Some("a") {
            return Err(err(i + 1, "sequence line must start with `a`"));
        }
        let set = w.map(|x| number(Some(x), i + 1, "element")).collect::<Result<Vec<_>, _>>()?;
        seq.push(set);
    }
    Ok((outcome, seq))
}

/// Order in which universe elements are mapped to diagram levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VariableOrder {
    #[default]
    Input,
    /// Breadth-first from vertex 1, smaller neighbors first.
    Bfs,
    Reverse,
}

impl FromStr for VariableOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "input" => Ok(VariableOrder::Input),
            "bfs" => Ok(VariableOrder::Bfs),
            "reverse" => Ok(VariableOrder::Reverse),
            other => Err(format!("unknown variable order `{other}`")),
        }
    }
}

/// `perm[v - 1]` is the new label of vertex `v`.
pub fn vertex_permutation(g: &Graph, order: VariableOrder) -> Vec<u32> {
    let n = g.vertex_count();
    match order {
        VariableOrder::Input => (1..=n).collect(),
        VariableOrder::Reverse => (1..=n).rev().collect(),
        VariableOrder::Bfs => {
            let adj = g.neighbors();
            let mut perm = vec![0u32; n as usize];
            let mut next = 1;
            for root in 1..=n {
                if perm[root as usize - 1] != 0 {
                    continue;
                }
                perm[root as usize - 1] = next;
                next += 1;
                let mut queue = VecDeque::from([root]);
                while let Some(u) = queue.pop_front() {
                    for &w in adj.get(u) {
                        if perm[w as usize - 1] == 0 {
                            perm[w as usize - 1] = next;
                            next += 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
            perm
        }
    }
}

/// Element renaming between the input and the solver's labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    forward: Vec<u32>,
    backward: Vec<u32>,
}

impl Relabeling {
    fn from_forward(forward: Vec<u32>) -> Self {
        let mut backward = vec![0; forward.len()];
        for (i, &f) in forward.iter().enumerate() {
            backward[f as usize - 1] = i as u32 + 1;
        }
        Relabeling { forward, backward }
    }

    fn map(table: &[u32], set: &[u32]) -> Vec<u32> {
        let mut s: Vec<u32> = set.iter().map(|&x| table[x as usize - 1]).collect();
        s.sort_unstable();
        s
    }

    pub fn to_solver(&self, set: &[u32]) -> Vec<u32> {
        Self::map(&self.forward, set)
    }

    pub fn to_input(&self, set: &[u32]) -> Vec<u32> {
        Self::map(&self.backward, set)
    }

    /// Rewrites the sets of a result back into input labels.
    pub fn restore(&self, res: &mut ReconfResult) {
        for s in &mut res.sequence {
            *s = self.to_input(s);
        }
        if let Some(w) = &mut res.witness {
            *w = self.to_input(w);
        }
    }
}

/// Copy of `inst` with its graph relabeled by `order`.
pub fn reorder(inst: &ReconfInstance, order: VariableOrder) -> (ReconfInstance, Relabeling) {
    let perm = vertex_permutation(&inst.graph, order);
    let graph = inst.graph.relabel(&perm);
    let forward = if inst.class.kind == ObjectKind::Matching {
        inst.graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u as usize - 1], perm[v as usize - 1]);
                let key = if graph.is_directed() || a < b { (a, b) } else { (b, a) };
                graph.edges().binary_search(&key).expect("relabeled edge exists") as u32 + 1
            })
            .collect()
    } else {
        perm
    };
    let map = Relabeling::from_forward(forward);
    let objective = inst.objective.as_ref().map(|o| match o {
        Objective::MaxWeight(w) => Objective::MaxWeight(permute_weights(w, &map.forward)),
        Objective::MinWeight(w) => Objective::MinWeight(permute_weights(w, &map.forward)),
        other => other.clone(),
    });
    let out = ReconfInstance {
        graph,
        starts: inst.starts.iter().map(|s| map.to_solver(s)).collect(),
        targets: inst.targets.iter().map(|s| map.to_solver(s)).collect(),
        objective,
        ..inst.clone()
    };
    (out, map)
}

fn permute_weights(w: &[i64], forward: &[u32]) -> Vec<i64> {
    let mut out = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        if let Some(&f) = forward.get(i) {
            out[f as usize - 1] = x;
        }
    }
    out
}
