//! Side-by-side runs of both planners.

use thiserror::Error;
use tstar_core::ltl::BuchiAutomaton;
use tstar_core::planner::{Algorithm, PlanError, PlanResult};
use tstar_core::workspace::GridWorkspace;
use tstar_core::MoveCost;

use crate::record::{timed_plan, BenchRecord};

#[derive(Debug, Error, PartialEq)]
pub enum CompareError {
    #[error("suffix costs diverge: baseline {baseline}, tstar {tstar}")]
    Diverged { baseline: MoveCost, tstar: MoveCost },
    #[error("only the {0} planner found a plan")]
    OneSided(&'static str),
    #[error("unsatisfiable")]
    Unsatisfiable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub baseline: BenchRecord,
    pub tstar: BenchRecord,
    pub baseline_plan: PlanResult,
    pub tstar_plan: PlanResult,
}

impl Comparison {
    /// Baseline time over T* time.
    pub fn speedup(&self) -> Option<f64> {
        Some(self.baseline.seconds? / self.tstar.seconds?)
    }
}

/// Runs each planner `reps` times and averages wall times. Fails when the
/// planners disagree on the optimal suffix cost.
pub fn compare(
    ws: &GridWorkspace,
    automaton: &BuchiAutomaton,
    workspace_id: &str,
    query_id: &str,
    reps: usize,
) -> Result<Comparison, CompareError> {
    let reps = reps.max(1);
    let run = |algorithm| -> (Result<PlanResult, PlanError>, f64) {
        let mut total = 0.0;
        let mut last = None;
        for _ in 0..reps {
            let (result, elapsed) = timed_plan(algorithm, ws, automaton);
            total += elapsed.as_secs_f64();
            last = Some(result);
        }
        (last.expect("at least one repetition"), total / reps as f64)
    };
    let (base, base_secs) = run(Algorithm::Baseline);
    let (fast, fast_secs) = run(Algorithm::Tstar);
    match (base, fast) {
        (Ok(b), Ok(t)) => {
            if b.suffix_cost != t.suffix_cost {
                return Err(CompareError::Diverged { baseline: b.suffix_cost, tstar: t.suffix_cost });
            }
            Ok(Comparison {
                baseline: BenchRecord::new(workspace_id, query_id, &b, Some(base_secs)),
                tstar: BenchRecord::new(workspace_id, query_id, &t, Some(fast_secs)),
                baseline_plan: b,
                tstar_plan: t,
            })
        }
        (Err(_), Err(_)) => Err(CompareError::Unsatisfiable),
        (Ok(_), Err(_)) => Err(CompareError::OneSided("baseline")),
        (Err(_), Ok(_)) => Err(CompareError::OneSided("tstar")),
    }
}
