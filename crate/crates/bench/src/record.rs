//! Benchmark records and trajectory documents.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use tstar_core::ltl::BuchiAutomaton;
use tstar_core::planner::{baseline_plan, tstar_plan, Algorithm, PlanError, PlanResult};
use tstar_core::workspace::{GridWorkspace, TransitionSystem};
use tstar_core::MoveCost;

/// Runs one planner and measures its wall time. Translation is not timed.
pub fn timed_plan(
    algorithm: Algorithm,
    ws: &GridWorkspace,
    automaton: &BuchiAutomaton,
) -> (Result<PlanResult, PlanError>, Duration) {
    let start = Instant::now();
    let result = match algorithm {
        Algorithm::Baseline => baseline_plan(ws, automaton),
        Algorithm::Tstar => tstar_plan(ws, automaton),
    };
    (result, start.elapsed())
}

/// One planner run, as reported by `compare` and `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub workspace: String,
    pub query: String,
    pub algorithm: String,
    pub seconds: Option<f64>,
    pub suffix_cost: f64,
    pub prefix_cost: f64,
    pub vertices: usize,
    pub edges: usize,
    pub edges_updated: u64,
    pub astar_calls: u64,
    pub memory_bytes: usize,
}

impl BenchRecord {
    pub fn new(workspace: &str, query: &str, plan: &PlanResult, seconds: Option<f64>) -> Self {
        BenchRecord {
            workspace: workspace.to_string(),
            query: query.to_string(),
            algorithm: plan.algorithm.name().to_string(),
            seconds,
            suffix_cost: plan.suffix_cost.as_f64(),
            prefix_cost: plan.prefix_cost.as_f64(),
            vertices: plan.graph.vertices,
            edges: plan.graph.edges,
            edges_updated: plan.stats.edges_updated,
            astar_calls: plan.stats.astar_calls,
            memory_bytes: plan.graph.memory_bytes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostField {
    pub half_units: u64,
    pub decimal: f64,
}

impl From<MoveCost> for CostField {
    fn from(c: MoveCost) -> Self {
        CostField { half_units: c.half_units(), decimal: c.as_f64() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub expansions: u64,
    pub updates: u64,
    pub dijkstra_calls: u64,
    pub astar_calls: u64,
}

/// Serialized plan: concrete cells as coordinate lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryDocument {
    pub workspace: String,
    pub query: String,
    pub algorithm: Algorithm,
    pub suffix_cost: CostField,
    pub prefix_cost: CostField,
    pub prefix: Vec<Vec<u32>>,
    pub suffix: Vec<Vec<u32>>,
    pub counters: Counters,
}

impl TrajectoryDocument {
    pub fn new(workspace: &str, query: &str, ws: &GridWorkspace, plan: &PlanResult) -> Self {
        let coords = |cells: &[usize]| cells.iter().map(|&s| ws.describe_state(s)).collect();
        TrajectoryDocument {
            workspace: workspace.to_string(),
            query: query.to_string(),
            algorithm: plan.algorithm,
            suffix_cost: plan.suffix_cost.into(),
            prefix_cost: plan.prefix_cost.into(),
            prefix: coords(&plan.concrete_prefix),
            suffix: coords(&plan.concrete_suffix),
            counters: Counters {
                expansions: plan.stats.expansions,
                updates: plan.stats.edges_updated,
                dijkstra_calls: plan.stats.dijkstra_calls,
                astar_calls: plan.stats.astar_calls,
            },
        }
    }
}
