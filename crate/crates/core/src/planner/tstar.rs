//! Planner over the reduced graph with lazy edge refinement.

use crate::ltl::BuchiAutomaton;
use crate::workspace::TransitionSystem;

use super::graph::{dijkstra_shortest_cycle, dijkstra_shortest_path, Run, WeightedGraph};
use super::reduced::{build_reduced_graph, ReducedGraph};
use super::result::{Algorithm, Candidate, GraphSize, PlanResult};
use super::{PlanError, SearchStats};

/// Owns the reduced graph so callers can inspect it after planning.
pub struct TStarPlanner<'a, T> {
    ts: &'a T,
    graph: ReducedGraph,
    stats: SearchStats,
}

impl<'a, T: TransitionSystem> TStarPlanner<'a, T> {
    pub fn new(ts: &'a T, automaton: &BuchiAutomaton) -> Self {
        TStarPlanner { ts, graph: build_reduced_graph(ts, automaton), stats: SearchStats::default() }
    }

    pub fn graph(&self) -> &ReducedGraph {
        &self.graph
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Cheapest cycle through `f` whose edges are all refined.
    pub fn find_suffix(&mut self, f: usize) -> Option<(Run, crate::MoveCost)> {
        loop {
            let (run, cost) = dijkstra_shortest_cycle(&self.graph, f, &mut self.stats)?;
            if self.graph.update_edges(self.ts, &run, &mut self.stats) == 0 {
                return Some((run, cost));
            }
        }
    }

    /// Cheapest path from the initial vertex to `f` whose edges are all
    /// refined.
    pub fn find_prefix(&mut self, f: usize) -> Option<(Run, crate::MoveCost)> {
        find_prefix(self.ts, &mut self.graph, f, &mut self.stats)
    }

    pub fn plan(&mut self) -> Result<PlanResult, PlanError> {
        let mut best: Option<Candidate> = None;
        let finals = self.graph.finals().to_vec();
        for f in finals {
            let Some((suffix, suffix_cost)) = self.find_suffix(f) else { continue };
            if let Some(b) = &best {
                // A strictly worse suffix cannot win whatever its prefix.
                if suffix_cost > b.suffix_cost {
                    continue;
                }
            }
            let Some((prefix, prefix_cost)) = self.find_prefix(f) else { continue };
            let candidate = Candidate { final_vertex: f, suffix, suffix_cost, prefix, prefix_cost };
            if best.as_ref().is_none_or(|b| candidate.better_than(b, &self.graph)) {
                best = Some(candidate);
            }
        }
        let best = best.ok_or(PlanError::Unsatisfiable)?;
        let size = GraphSize {
            vertices: self.graph.vertex_count(),
            edges: self.graph.edge_count(),
            memory_bytes: self.graph.memory_bytes(),
        };
        best.into_result(&self.graph, Algorithm::Tstar, self.stats, size)
    }
}

/// Refines the shortest initial-to-`f` path until it stops changing.
pub fn find_prefix<T: TransitionSystem>(
    ts: &T,
    graph: &mut ReducedGraph,
    f: usize,
    stats: &mut SearchStats,
) -> Option<(Run, crate::MoveCost)> {
    loop {
        let (run, cost) = dijkstra_shortest_path(graph, graph.initial(), f, stats)?;
        if graph.update_edges(ts, &run, stats) == 0 {
            return Some((run, cost));
        }
    }
}

pub fn tstar_plan<T: TransitionSystem>(ts: &T, automaton: &BuchiAutomaton) -> Result<PlanResult, PlanError> {
    TStarPlanner::new(ts, automaton).plan()
}
