//! Command-line driver behind the `zrecon` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::builders::{Extremal, ObjectClass, ObjectKind};
use crate::io::{parse_graph, parse_instance, reorder, write_result, write_stats, VariableOrder};
use crate::ops::Model;
use crate::search::{solve, ReconfInstance, SearchError, SearchLimits, Variant};
use crate::zdd::Objective;

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;

/// Solve a reconfiguration problem on a graph.
#[derive(Parser, Debug, Clone)]
#[command(name = "zrecon", version)]
pub struct RunConfig {
    /// Graph in DIMACS edge format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Start (`s …`) and target (`t …`) sets.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// is, vc, ds, clique, dis:K, dds:K or matching.
    #[arg(long, default_value = "is")]
    pub kind: ObjectKind,
    /// Keep only maximal or minimal objects.
    #[arg(long)]
    pub filter: Option<Extremal>,
    /// tar, tj or ts.
    #[arg(long, default_value = "tj")]
    pub model: Model,
    /// reachability, shortest, farthest, connectivity or optimization.
    #[arg(long, default_value = "reachability")]
    pub variant: Variant,
    /// Objects must have at least this many elements.
    #[arg(short = 'k', long = "threshold", default_value_t = 0)]
    pub threshold: u32,
    /// max-card, min-card, max-weight or min-weight.
    #[arg(long)]
    pub objective: Option<String>,
    /// Comma-separated element weights for the weighted objectives.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    /// Seed for the connectivity probe.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// input, bfs or reverse.
    #[arg(long, default_value = "input")]
    pub order: VariableOrder,
    #[arg(long)]
    pub max_nodes: Option<usize>,
    #[arg(long)]
    pub max_layers: Option<usize>,
    /// Write the answer here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print statistics to standard error.
    #[arg(long)]
    pub stats: bool,
    /// Read edges as arcs.
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Exhausted(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Exhausted(m) => Failure::Exhausted(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn objective(cfg: &RunConfig, universe: u32) -> Result<Option<Objective>, Failure> {
    let Some(name) = cfg.objective.as_deref() else { return Ok(None) };
    let weights = || -> Result<Vec<i64>, Failure> {
        let w = cfg.weights.clone().ok_or_else(|| Failure::Input("weighted objective needs --weights".into()))?;
        if w.len() != universe as usize {
            return Err(Failure::Input(format!("expected {universe} weights, got {}", w.len())));
        }
        Ok(w)
    };
    Ok(Some(match name {
        "max-card" => Objective::MaxCardinality,
        "min-card" => Objective::MinCardinality,
        "max-weight" => Objective::MaxWeight(weights()?),
        "min-weight" => Objective::MinWeight(weights()?),
        other => return Err(Failure::Input(format!("unknown objective `{other}`"))),
    }))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let parsed = parse_graph(&read(&cfg.graph)?, cfg.directed)
        .map_err(|e| Failure::Input(format!("{}: {e}", cfg.graph.display())))?;
    if parsed.duplicates > 0 {
        let _ = writeln!(err, "c warning: dropped {} duplicate edges", parsed.duplicates);
    }
    let graph = parsed.graph;
    let universe = cfg.kind.universe_size(&graph);
    let sets = match &cfg.instance {
        Some(p) => parse_instance(&read(p)?, universe).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => Default::default(),
    };
    let needs_targets = matches!(cfg.variant, Variant::Reachability | Variant::Shortest);
    if cfg.variant != Variant::Connectivity && sets.starts.is_empty() {
        return Err(Failure::Input(format!("{} needs at least one `s` line", cfg.variant)));
    }
    if needs_targets && sets.targets.is_empty() {
        return Err(Failure::Input(format!("{} needs at least one `t` line", cfg.variant)));
    }
    let objective = objective(cfg, universe)?;
    if cfg.variant == Variant::Optimization && objective.is_none() {
        return Err(Failure::Input("optimization needs --objective".into()));
    }
    let inst = ReconfInstance {
        graph,
        class: ObjectClass { kind: cfg.kind, filter: cfg.filter },
        model: cfg.model,
        variant: cfg.variant,
        threshold: cfg.threshold,
        starts: sets.starts,
        targets: sets.targets,
        objective,
    };
    let (inst, map) = reorder(&inst, cfg.order);
    let limits = SearchLimits { max_nodes: cfg.max_nodes, max_layers: cfg.max_layers, compact: true };
    let mut result = solve(&inst, limits, cfg.seed, &mut |_, _| {})?;
    map.restore(&mut result);
    let text = write_result(&result);
    match &cfg.output {
        Some(p) => fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string()))?,
    }
    if cfg.stats {
        let _ = err.write_all(write_stats(&result).as_bytes());
    }
    Ok(())
}

/// Parses `args` (program name first), solves, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_SOLVED
            };
        }
    };
    match execute(&cfg, out, err) {
        Ok(()) => EXIT_SOLVED,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Exhausted(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_EXHAUSTED
        }
    }
}
