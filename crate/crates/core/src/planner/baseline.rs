//! Full-product planner: Dijkstra from the start for prefixes and one
//! shortest-cycle search per accepting vertex.

use crate::ltl::BuchiAutomaton;
use crate::workspace::TransitionSystem;

use super::graph::{dijkstra_all, dijkstra_shortest_cycle, unwind, Run, WeightedGraph};
use super::product::build_product;
use super::result::{Algorithm, Candidate, GraphSize, PlanResult};
use super::{PlanError, SearchStats};

pub fn baseline_plan<T: TransitionSystem>(ts: &T, automaton: &BuchiAutomaton) -> Result<PlanResult, PlanError> {
    let graph = build_product(ts, automaton);
    let mut stats = SearchStats::default();
    let (dist, pred) = dijkstra_all(&graph, graph.initial(), &mut stats);
    let mut best: Option<Candidate> = None;
    for &f in graph.finals() {
        if !dist[f].is_finite() {
            continue;
        }
        let Some((suffix, suffix_cost)) = dijkstra_shortest_cycle(&graph, f, &mut stats) else { continue };
        let candidate = Candidate {
            final_vertex: f,
            suffix,
            suffix_cost,
            prefix: Run::default(),
            prefix_cost: dist[f],
        };
        if best.as_ref().is_none_or(|b| candidate.better_than(b, &graph)) {
            best = Some(candidate);
        }
    }
    let mut best = best.ok_or(PlanError::Unsatisfiable)?;
    best.prefix = Run::new(unwind(&pred, graph.initial(), best.final_vertex));
    let size = GraphSize {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        memory_bytes: graph.memory_bytes(),
    };
    best.into_result(&graph, Algorithm::Baseline, stats, size)
}
