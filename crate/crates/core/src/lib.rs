//! Temporal-logic path planning on weighted grid transition systems.
//!
//! A robot moving on a grid is asked to satisfy an LTL query forever. Plans
//! are prefix-suffix lassos whose cost is the cost of the repeated suffix
//! cycle. Two planners are provided:
//!
//! * [`planner::baseline_plan`] builds the full product of the grid and the
//!   query automaton and runs Dijkstra from every accepting product state;
//! * [`planner::tstar_plan`] works on a reduced graph in which stretches of
//!   motion under a negative self-loop are collapsed into single "distant"
//!   edges weighted by an admissible heuristic, and refines only the edges
//!   that end up on candidate cycles, using masked A*.
//!
//! Both planners return the same optimal suffix cost.

pub mod cost;
pub mod ltl;
pub mod planner;
pub mod workspace;

pub use cost::MoveCost;
