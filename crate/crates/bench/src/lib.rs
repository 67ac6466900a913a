//! Benchmark harness for the tstar planners: workspace generation, planner
//! comparisons, parameter sweeps, trajectory documents and SVG rendering.

pub mod compare;
pub mod generate;
pub mod queries;
pub mod record;
pub mod stats;
pub mod svg;
pub mod sweep;
