//! Explicit product of a transition system with a Büchi automaton.

use std::collections::VecDeque;
use std::mem::size_of;

use crate::cost::MoveCost;
use crate::ltl::BuchiAutomaton;
use crate::workspace::TransitionSystem;

use super::graph::WeightedGraph;
use super::labels::LabelIndex;

const UNSEEN: u32 = u32::MAX;

/// Reachable part of `T × B`, stored in compressed sparse rows.
///
/// An edge `(s_i, q_m) → (s_j, q_n)` exists when `s_i → s_j` is a move and
/// the letter of `s_j` satisfies some transition `q_m → q_n`.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    q_count: usize,
    keys: Vec<(u32, u32)>,
    index: Vec<u32>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    weights: Vec<MoveCost>,
    initial: usize,
    finals: Vec<usize>,
}

/// Builds the part of the product reachable from `(s_0, q_0)`.
pub fn build_product<T: TransitionSystem>(ts: &T, automaton: &BuchiAutomaton) -> ProductGraph {
    let q_count = automaton.state_count();
    let letters = LabelIndex::new(ts, automaton);
    let mut graph = ProductGraph {
        q_count,
        keys: Vec::new(),
        index: vec![UNSEEN; ts.state_count() * q_count],
        offsets: vec![0],
        targets: Vec::new(),
        weights: Vec::new(),
        initial: 0,
        finals: Vec::new(),
    };
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); q_count];
    for (i, t) in automaton.transitions().iter().enumerate() {
        outgoing[t.from].push(i);
    }
    let transitions = automaton.transitions();

    graph.intern(ts.initial_state(), automaton.initial());
    let mut queue = VecDeque::from([0usize]);
    let mut successors = Vec::new();
    let mut seen_q = Vec::new();
    while let Some(v) = queue.pop_front() {
        let (s, q) = graph.keys[v];
        let (s, q) = (s as usize, q as usize);
        successors.clear();
        ts.for_each_successor(s, |n, c| successors.push((n, c)));
        for &(n, cost) in &successors {
            let letter = letters.letter(n);
            seen_q.clear();
            for &ti in &outgoing[q] {
                let t = &transitions[ti];
                if !t.clause.satisfied_by(letter) || seen_q.contains(&t.to) {
                    continue;
                }
                seen_q.push(t.to);
                let before = graph.keys.len();
                let target = graph.intern(n, t.to);
                if graph.keys.len() > before {
                    queue.push_back(target);
                }
                graph.targets.push(target as u32);
                graph.weights.push(cost);
            }
        }
        graph.offsets.push(graph.targets.len() as u32);
    }
    graph.finals = (0..graph.keys.len())
        .filter(|&v| automaton.is_accepting(graph.keys[v].1 as usize))
        .collect();
    graph
}

impl ProductGraph {
    fn intern(&mut self, s: usize, q: usize) -> usize {
        let slot = s * self.q_count + q;
        if self.index[slot] == UNSEEN {
            self.index[slot] = self.keys.len() as u32;
            self.keys.push((s as u32, q as u32));
        }
        self.index[slot] as usize
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Vertices whose automaton state is accepting, in id order.
    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    /// Bytes held by vertex and edge records.
    pub fn memory_bytes(&self) -> usize {
        self.vertex_count() * (size_of::<(u32, u32)>() + size_of::<u32>())
            + self.edge_count() * (size_of::<u32>() + size_of::<MoveCost>())
    }
}

impl WeightedGraph for ProductGraph {
    fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    fn edge_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    fn for_each_edge<F: FnMut(usize, MoveCost)>(&self, v: usize, mut f: F) {
        let (lo, hi) = (self.offsets[v] as usize, self.offsets[v + 1] as usize);
        for i in lo..hi {
            f(self.targets[i] as usize, self.weights[i]);
        }
    }

    fn vertex_key(&self, v: usize) -> (usize, usize) {
        let (s, q) = self.keys[v];
        (s as usize, q as usize)
    }

    fn vertex_of(&self, (s, q): (usize, usize)) -> Option<usize> {
        if q >= self.q_count {
            return None;
        }
        match self.index.get(s * self.q_count + q) {
            Some(&v) if v != UNSEEN => Some(v as usize),
            _ => None,
        }
    }
}
