//! Plan results and projection of abstract runs onto the transition system.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::MoveCost;
use crate::ltl::LassoWord;
use crate::workspace::TransitionSystem;

use super::graph::{Run, WeightedGraph};
use super::product::ProductGraph;
use super::reduced::ReducedGraph;
use super::{PlanError, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Baseline,
    Tstar,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Tstar => "tstar",
        }
    }
}

/// Size of the graph a planner searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSize {
    pub vertices: usize,
    pub edges: usize,
    pub memory_bytes: usize,
}

/// An optimal prefix-suffix plan.
///
/// Abstract runs are `(transition-system state, automaton state)` pairs.
/// `concrete_prefix` runs from the start state up to, not including, the
/// accepting vertex's state; `concrete_suffix` starts and ends there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanResult {
    pub algorithm: Algorithm,
    pub final_vertex: (usize, usize),
    pub prefix_run: Vec<(usize, usize)>,
    pub suffix_run: Vec<(usize, usize)>,
    pub prefix_cost: MoveCost,
    pub suffix_cost: MoveCost,
    pub concrete_prefix: Vec<usize>,
    pub concrete_suffix: Vec<usize>,
    pub stats: SearchStats,
    pub graph: GraphSize,
}

impl PlanResult {
    /// The infinite label word the robot produces by following the plan.
    ///
    /// A move into a state reads that state's label; the start state's own
    /// label is never read.
    pub fn lasso_word<T: TransitionSystem>(&self, ts: &T) -> LassoWord {
        let label = |s: &usize| ts.label(*s).cloned().unwrap_or_default();
        let period: Vec<BTreeSet<String>> = self.concrete_suffix[1..].iter().map(label).collect();
        let prefix: Vec<BTreeSet<String>> = if self.concrete_prefix.is_empty() {
            Vec::new()
        } else {
            self.concrete_prefix[1..].iter().chain(&self.concrete_suffix[..1]).map(label).collect()
        };
        LassoWord::new(prefix, period).expect("a suffix cycle has at least one move")
    }

    /// Cost of walking the concrete suffix move by move.
    pub fn concrete_suffix_cost<T: TransitionSystem>(&self, ts: &T) -> Option<MoveCost> {
        walk_cost(ts, &self.concrete_suffix)
    }

    pub fn concrete_prefix_cost<T: TransitionSystem>(&self, ts: &T) -> Option<MoveCost> {
        let mut walk = self.concrete_prefix.clone();
        walk.push(self.concrete_suffix[0]);
        walk_cost(ts, &walk)
    }
}

/// Sum of move costs along a state sequence; `None` if a step is not a move.
pub(crate) fn walk_cost<T: TransitionSystem>(ts: &T, walk: &[usize]) -> Option<MoveCost> {
    walk.windows(2)
        .map(|w| {
            let mut found = None;
            ts.for_each_successor(w[0], |n, c| {
                if n == w[1] {
                    found = Some(found.map_or(c, |x: MoveCost| x.min(c)));
                }
            });
            found
        })
        .sum()
}

/// A graph whose edges expand to state sequences of the transition system.
pub trait ProjectableGraph: WeightedGraph {
    /// States along edge `from → to`, endpoints included.
    fn edge_path(&self, from: usize, to: usize) -> Option<Vec<usize>>;
}

impl ProjectableGraph for ProductGraph {
    fn edge_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        self.edge_weight(from, to)?;
        Some(vec![self.vertex_key(from).0, self.vertex_key(to).0])
    }
}

impl ProjectableGraph for ReducedGraph {
    fn edge_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        self.edge(from, to).filter(|e| e.updated).and_then(|e| e.path.clone())
    }
}

/// Concatenates the concrete paths of a run's edges, dropping the repeated
/// state at each junction.
pub fn project_run<G: ProjectableGraph>(graph: &G, run: &Run) -> Result<Vec<usize>, PlanError> {
    let mut states = match run.vertices.first() {
        Some(&v) => vec![graph.vertex_key(v).0],
        None => return Ok(Vec::new()),
    };
    for (from, to) in run.edges() {
        let path = graph.edge_path(from, to).ok_or(PlanError::UnexpandedEdge { from, to })?;
        states.extend_from_slice(&path[1..]);
    }
    Ok(states)
}

pub(crate) struct Candidate {
    pub final_vertex: usize,
    pub suffix: Run,
    pub suffix_cost: MoveCost,
    pub prefix: Run,
    pub prefix_cost: MoveCost,
}

impl Candidate {
    fn rank<G: WeightedGraph>(&self, graph: &G) -> (MoveCost, MoveCost, (usize, usize)) {
        (self.suffix_cost, self.prefix_cost, graph.vertex_key(self.final_vertex))
    }

    pub(crate) fn better_than<G: WeightedGraph>(&self, other: &Candidate, graph: &G) -> bool {
        self.rank(graph) < other.rank(graph)
    }

    pub(crate) fn into_result<G: ProjectableGraph>(
        self,
        graph: &G,
        algorithm: Algorithm,
        stats: SearchStats,
        size: GraphSize,
    ) -> Result<PlanResult, PlanError> {
        let mut concrete_prefix = project_run(graph, &self.prefix)?;
        concrete_prefix.pop();
        let concrete_suffix = project_run(graph, &self.suffix)?;
        Ok(PlanResult {
            algorithm,
            final_vertex: graph.vertex_key(self.final_vertex),
            prefix_run: self.prefix.keys(graph),
            suffix_run: self.suffix.keys(graph),
            prefix_cost: self.prefix_cost,
            suffix_cost: self.suffix_cost,
            concrete_prefix,
            concrete_suffix,
            stats,
            graph: size,
        })
    }
}
