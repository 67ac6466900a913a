//! Exact move costs in half-unit steps.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A non-negative path cost counted in half units, so a straight move is `2`
/// and a diagonal move is `3`.
///
/// [`MoveCost::INFINITY`] is an absorbing sentinel ordered above every finite
/// cost; it marks distant edges whose endpoints turned out to be disconnected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveCost(u64);

impl MoveCost {
    pub const ZERO: MoveCost = MoveCost(0);
    pub const INFINITY: MoveCost = MoveCost(u64::MAX);
    /// Cost of one axis-aligned move.
    pub const STRAIGHT: MoveCost = MoveCost(2);
    /// Cost of one diagonal move (planar or spatial).
    pub const DIAGONAL: MoveCost = MoveCost(3);

    pub const fn from_half_units(half_units: u64) -> Self {
        MoveCost(half_units)
    }

    /// Whole units, e.g. `MoveCost::units(6)` is six straight moves.
    pub const fn units(units: u64) -> Self {
        MoveCost(units * 2)
    }

    pub const fn half_units(self) -> u64 {
        self.0
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    /// Decimal value; infinite costs map to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        if self.is_finite() {
            self.0 as f64 / 2.0
        } else {
            f64::INFINITY
        }
    }
}

impl Add for MoveCost {
    type Output = MoveCost;

    fn add(self, rhs: MoveCost) -> MoveCost {
        if !self.is_finite() || !rhs.is_finite() {
            return MoveCost::INFINITY;
        }
        // Finite sums never reach the sentinel at any realistic grid size.
        MoveCost(self.0.saturating_add(rhs.0))
    }
}

impl Sum for MoveCost {
    fn sum<I: Iterator<Item = MoveCost>>(iter: I) -> MoveCost {
        iter.fold(MoveCost::ZERO, Add::add)
    }
}

impl fmt::Display for MoveCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_finite() {
            return write!(f, "inf");
        }
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}
