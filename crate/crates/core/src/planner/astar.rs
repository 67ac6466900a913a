//! A* over the transition system with a cell mask.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::MoveCost;
use crate::workspace::TransitionSystem;

use super::SearchStats;

const NONE: u32 = u32::MAX;

/// Reusable search state; stamps avoid clearing the arrays between calls.
#[derive(Clone, Debug, Default)]
pub struct AStarBuffers {
    generation: u32,
    seen: Vec<u32>,
    closed: Vec<u32>,
    g: Vec<MoveCost>,
    parent: Vec<u32>,
}

impl AStarBuffers {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, n: usize) {
        if self.seen.len() != n || self.generation == u32::MAX {
            self.seen = vec![0; n];
            self.closed = vec![0; n];
            self.g = vec![MoveCost::INFINITY; n];
            self.parent = vec![NONE; n];
            self.generation = 0;
        }
        self.generation += 1;
    }

    #[inline]
    fn g(&self, s: usize) -> MoveCost {
        if self.seen[s] == self.generation {
            self.g[s]
        } else {
            MoveCost::INFINITY
        }
    }

    #[inline]
    fn set(&mut self, s: usize, g: MoveCost, parent: usize) {
        self.seen[s] = self.generation;
        self.g[s] = g;
        self.parent[s] = parent as u32;
    }

    #[inline]
    fn is_closed(&self, s: usize) -> bool {
        self.closed[s] == self.generation
    }
}

/// Cheapest move sequence `a → b` that never enters a masked cell except at
/// its endpoints. With `a == b` the result is the cheapest non-trivial cycle
/// through `a`.
///
/// Returns the cost and the visited states, both endpoints included.
pub fn constrained_astar<T, M>(ts: &T, masked: M, a: usize, b: usize) -> Option<(MoveCost, Vec<usize>)>
where
    T: TransitionSystem,
    M: Fn(usize) -> bool,
{
    let mut buffers = AStarBuffers::new();
    astar_with(ts, &masked, a, b, &mut buffers, &mut SearchStats::default())
}

pub(crate) fn astar_with<T, M>(
    ts: &T,
    masked: &M,
    a: usize,
    b: usize,
    buf: &mut AStarBuffers,
    stats: &mut SearchStats,
) -> Option<(MoveCost, Vec<usize>)>
where
    T: TransitionSystem,
    M: Fn(usize) -> bool,
{
    stats.astar_calls += 1;
    if !ts.is_state(a) || !ts.is_state(b) {
        return None;
    }
    buf.reset(ts.state_count());
    let passable = |s: usize| s == b || s == a || !masked(s);
    let mut open = BinaryHeap::new();
    if a == b {
        // Seed with the first move so the goal test does not fire at step 0.
        let mut best_stay = None;
        ts.for_each_successor(a, |n, c| {
            if n == a {
                best_stay = Some(best_stay.map_or(c, |x: MoveCost| x.min(c)));
            } else if passable(n) && c < buf.g(n) {
                buf.set(n, c, a);
                open.push(Reverse((c + ts.heuristic(n, b), n)));
            }
        });
        if let Some(c) = best_stay {
            if c <= ts.min_move_cost() + ts.min_move_cost() {
                // Staying is a single move; no proper cycle is cheaper than
                // two moves, so anything at or below that wins outright.
                return Some((c, vec![a, a]));
            }
            buf.set(a, c, a);
            open.push(Reverse((c, a)));
        }
    } else {
        buf.set(a, MoveCost::ZERO, a);
        open.push(Reverse((ts.heuristic(a, b), a)));
    }
    while let Some(Reverse((_, u))) = open.pop() {
        if buf.is_closed(u) {
            continue;
        }
        if u == b && buf.seen[u] == buf.generation {
            let cost = buf.g(u);
            let mut path = vec![b];
            let mut v = b;
            loop {
                let p = buf.parent[v] as usize;
                path.push(p);
                if p == a {
                    break;
                }
                v = p;
            }
            path.reverse();
            return Some((cost, path));
        }
        buf.closed[u] = buf.generation;
        stats.expansions += 1;
        let gu = buf.g(u);
        ts.for_each_successor(u, |n, c| {
            if !passable(n) || buf.is_closed(n) {
                return;
            }
            let ng = gu + c;
            if ng < buf.g(n) {
                buf.set(n, ng, u);
                open.push(Reverse((ng + ts.heuristic(n, b), n)));
            }
        });
    }
    None
}
