//! Grid workspaces and the transition-system interface the planners use.

mod format;
mod grid;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::MoveCost;

pub use format::{load_workspace, parse_ascii, to_ascii, to_json};
pub use grid::{Cell, Connectivity, GridWorkspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WorkspaceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("dims must be 2 or 3 positive extents, got {0:?}")]
    InvalidDims(Vec<u32>),
    #[error("unknown connectivity {0}; expected 4, 8, 6 or 26")]
    UnknownConnectivity(u32),
    #[error("connectivity {connectivity} does not fit a {dims}-D workspace")]
    ConnectivityMismatch { connectivity: u32, dims: usize },
    #[error("cell {0:?} is out of bounds")]
    OutOfBounds(Vec<u32>),
    #[error("start cell {0:?} is an obstacle")]
    StartOnObstacle(Vec<u32>),
    #[error("labeled cell {0:?} is an obstacle")]
    LabelOnObstacle(Vec<u32>),
    #[error("marker '{0}' is declared with conflicting propositions")]
    ConflictingLabel(char),
    #[error("invalid proposition name '{0}'")]
    InvalidProposition(String),
    #[error("cell {0:?} is not a free in-bounds cell")]
    NotAState(Vec<u32>),
    #[error("{0} distinct label sets exceed the ASCII marker alphabet; use the JSON format")]
    TooManyLabelSets(usize),
}

/// Structured (JSON) workspace description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceDocument {
    pub dims: Vec<u32>,
    pub connectivity: u32,
    pub start: Vec<u32>,
    #[serde(default)]
    pub obstacles: Vec<Vec<u32>>,
    #[serde(default)]
    pub labels: BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub stay: bool,
}

/// A weighted, labeled transition system with dense integer state ids.
///
/// Ids in `0..state_count()` may include blocked slots; `is_state` tells
/// them apart.
pub trait TransitionSystem {
    fn state_count(&self) -> usize;

    fn initial_state(&self) -> usize;

    fn is_state(&self, s: usize) -> bool;

    /// Calls `f(successor, cost)` for every one-move successor of `s`.
    fn for_each_successor<F: FnMut(usize, MoveCost)>(&self, s: usize, f: F);

    fn label(&self, s: usize) -> Option<&BTreeSet<String>>;

    /// States with a non-empty label, in increasing id order.
    fn labeled_states(&self) -> impl Iterator<Item = (usize, &BTreeSet<String>)> + '_;

    /// Admissible and consistent lower bound on the move cost from `a` to `b`.
    fn heuristic(&self, a: usize, b: usize) -> MoveCost;

    /// Cheapest single move.
    fn min_move_cost(&self) -> MoveCost {
        MoveCost::STRAIGHT
    }

    /// Human-readable coordinates of a state.
    fn describe_state(&self, s: usize) -> Vec<u32> {
        vec![s as u32]
    }
}
