//! Product construction and the two lasso planners.

mod astar;
mod baseline;
mod graph;
mod labels;
mod product;
mod reduced;
mod result;
mod tstar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use astar::{constrained_astar, AStarBuffers};
pub use baseline::baseline_plan;
pub use graph::{dijkstra_shortest_cycle, dijkstra_shortest_path, run_cost, Run, WeightedGraph};
pub use product::{build_product, ProductGraph};
pub use reduced::{build_reduced_graph, update_edges, ReducedEdge, ReducedGraph};
pub use result::{project_run, Algorithm, GraphSize, PlanResult, ProjectableGraph};
pub use tstar::{find_prefix, tstar_plan, TStarPlanner};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("no accepting lasso exists for this query on this workspace")]
    Unsatisfiable,
    #[error("edge {from} -> {to} has no concrete path")]
    UnexpandedEdge { from: usize, to: usize },
}

/// Work counters accumulated by a planner.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Vertices or cells popped and expanded by Dijkstra and A*.
    pub expansions: u64,
    /// Reduced-graph edges refined by A*.
    pub edges_updated: u64,
    pub dijkstra_calls: u64,
    pub astar_calls: u64,
}
