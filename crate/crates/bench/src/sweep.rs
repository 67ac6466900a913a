//! Parameter sweeps over generated workspaces.

use std::io::Write;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;
use tstar_core::ltl::BuchiAutomaton;
use tstar_core::workspace::GridWorkspace;

use crate::compare::{compare, CompareError};
use crate::generate::{embed_workspace, generate_workspace, location_regions, GenerateError, GenerateSpec};
use crate::record::BenchRecord;

/// Attempts per (value, repetition) before the row is recorded as skipped.
pub const MAX_ATTEMPTS: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    /// Obstacle density in percent.
    Density,
    /// Number of labeled locations; two thirds gather, one third upload.
    QuerySize,
    /// Side length of a square grid holding a fixed base layout.
    WorkspaceSize,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Density => "density",
            Axis::QuerySize => "query-size",
            Axis::WorkspaceSize => "workspace-size",
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "density" => Ok(Axis::Density),
            "query-size" => Ok(Axis::QuerySize),
            "workspace-size" => Ok(Axis::WorkspaceSize),
            _ => Err(format!("unknown axis '{s}'; expected density, query-size or workspace-size")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<u32>,
    pub reps: usize,
    pub seed: u64,
    /// Grid side for the density and query-size axes.
    pub side: u32,
    /// Obstacle density in percent for the axes that do not vary it.
    pub density: u32,
    pub connectivity: u32,
    /// Timing repetitions per planner within one row.
    pub timing_reps: usize,
    /// Leave timing columns empty so output is byte-reproducible.
    pub omit_timing: bool,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("axis values must be strictly increasing and non-empty")]
    Values,
    #[error("density {0}% is outside 0..100")]
    Density(u32),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("{workspace}: {source}")]
    Compare { workspace: String, source: CompareError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl SweepSpec {
    pub fn new(axis: Axis, values: Vec<u32>) -> Self {
        SweepSpec {
            axis,
            values,
            reps: 1,
            seed: 0,
            side: 100,
            density: 20,
            connectivity: 8,
            timing_reps: 1,
            omit_timing: false,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.reps == 0 {
            return Err(SweepError::NoRepetitions);
        }
        if self.values.is_empty() || self.values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SweepError::Values);
        }
        let densities = if self.axis == Axis::Density { self.values.clone() } else { vec![self.density] };
        if let Some(&d) = densities.iter().find(|&&d| d >= 100) {
            return Err(SweepError::Density(d));
        }
        Ok(())
    }

    /// Random stream for one attempt of one cell of the table.
    fn rng(&self, value_index: usize, rep: usize, attempt: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((value_index as u64) << 40) | ((rep as u64) << 20) | attempt);
        rng
    }

    fn base_spec(&self, side: u32, density: u32) -> GenerateSpec {
        let mut spec = GenerateSpec::gather_upload(side, density as f64 / 100.0);
        spec.connectivity = self.connectivity;
        spec
    }

    /// Workspace for `(value_index, rep, attempt)`.
    pub fn instance(&self, value_index: usize, rep: usize, attempt: u64) -> Result<GridWorkspace, GenerateError> {
        let value = self.values[value_index];
        match self.axis {
            Axis::Density => generate_workspace(&self.base_spec(self.side, value), &mut self.rng(value_index, rep, attempt)),
            Axis::QuerySize => {
                let gathers = ((2 * value as usize) as f64 / 3.0).round() as usize;
                let mut spec = self.base_spec(self.side, self.density);
                spec.regions = location_regions(gathers.max(1), (value as usize - gathers).max(1));
                generate_workspace(&spec, &mut self.rng(value_index, rep, attempt))
            }
            Axis::WorkspaceSize => {
                // The base layout depends only on (rep, attempt) so every
                // size shares the same start, labels and base obstacles.
                let base_side = self.values[0];
                let base = generate_workspace(
                    &self.base_spec(base_side, self.density),
                    &mut self.rng(usize::MAX >> 40, rep, attempt),
                )?;
                if value == base_side {
                    return Ok(base);
                }
                embed_workspace(
                    &base,
                    &[value, value],
                    self.density as f64 / 100.0,
                    &mut self.rng(value_index, rep, attempt),
                )
            }
        }
    }
}

/// One line of the sweep table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis: &'static str,
    pub value: u32,
    pub rep: usize,
    pub status: &'static str,
    pub workspace: String,
    pub query: String,
    pub algorithm: String,
    pub seconds: Option<f64>,
    pub suffix_cost: Option<f64>,
    pub prefix_cost: Option<f64>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub edges_updated: Option<u64>,
    pub astar_calls: Option<u64>,
    pub memory_bytes: Option<usize>,
    pub speedup: Option<f64>,
}

impl SweepRow {
    fn from_record(axis: Axis, value: u32, rep: usize, record: BenchRecord, speedup: Option<f64>) -> Self {
        SweepRow {
            axis: axis.name(),
            value,
            rep,
            status: "ok",
            workspace: record.workspace,
            query: record.query,
            algorithm: record.algorithm,
            seconds: record.seconds,
            suffix_cost: Some(record.suffix_cost),
            prefix_cost: Some(record.prefix_cost),
            vertices: Some(record.vertices),
            edges: Some(record.edges),
            edges_updated: Some(record.edges_updated),
            astar_calls: Some(record.astar_calls),
            memory_bytes: Some(record.memory_bytes),
            speedup,
        }
    }

    fn skipped(axis: Axis, value: u32, rep: usize, query: &str) -> Self {
        SweepRow {
            axis: axis.name(),
            value,
            rep,
            status: "skipped",
            workspace: String::new(),
            query: query.to_string(),
            algorithm: String::new(),
            seconds: None,
            suffix_cost: None,
            prefix_cost: None,
            vertices: None,
            edges: None,
            edges_updated: None,
            astar_calls: None,
            memory_bytes: None,
            speedup: None,
        }
    }
}

/// Runs the sweep. Each (value, repetition) yields a baseline row and a T*
/// row, or one skipped row after [`MAX_ATTEMPTS`] unsatisfiable instances.
pub fn run_sweep(spec: &SweepSpec, automaton: &BuchiAutomaton, query_id: &str) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let mut rows = Vec::new();
    for (vi, &value) in spec.values.iter().enumerate() {
        for rep in 0..spec.reps {
            let mut done = false;
            for attempt in 0..MAX_ATTEMPTS {
                let ws = spec.instance(vi, rep, attempt)?;
                let id = format!("{}={value}/seed={}/rep={rep}/attempt={attempt}", spec.axis.name(), spec.seed);
                match compare(&ws, automaton, &id, query_id, spec.timing_reps) {
                    Ok(cmp) => {
                        let speedup = if spec.omit_timing { None } else { cmp.speedup() };
                        let (mut base, mut fast) = (cmp.baseline, cmp.tstar);
                        if spec.omit_timing {
                            base.seconds = None;
                            fast.seconds = None;
                        }
                        rows.push(SweepRow::from_record(spec.axis, value, rep, base, None));
                        rows.push(SweepRow::from_record(spec.axis, value, rep, fast, speedup));
                        done = true;
                        break;
                    }
                    Err(CompareError::Unsatisfiable) => continue,
                    Err(source) => return Err(SweepError::Compare { workspace: id, source }),
                }
            }
            if !done {
                rows.push(SweepRow::skipped(spec.axis, value, rep, query_id));
            }
        }
    }
    Ok(rows)
}

pub fn write_rows(rows: &[SweepRow], out: impl Write) -> Result<(), SweepError> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_must_increase() {
        let mut spec = SweepSpec::new(Axis::Density, vec![10, 5]);
        assert!(matches!(spec.validate(), Err(SweepError::Values)));
        spec.values = vec![5, 10];
        spec.reps = 0;
        assert!(matches!(spec.validate(), Err(SweepError::NoRepetitions)));
    }

    #[test]
    fn workspace_sizes_share_the_base_layout() {
        let mut spec = SweepSpec::new(Axis::WorkspaceSize, vec![20, 40, 60]);
        spec.seed = 3;
        let small = spec.instance(0, 0, 0).unwrap().to_document();
        let large = spec.instance(2, 0, 0).unwrap().to_document();
        assert_eq!(small.labels, large.labels);
        assert_eq!(small.start, large.start);
        assert_eq!(large.dims, vec![60, 60]);
    }
}
