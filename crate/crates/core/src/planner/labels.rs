//! Per-state letters over an automaton's proposition universe.

use crate::ltl::{BuchiAutomaton, PropSet};
use crate::workspace::TransitionSystem;

/// Dense `state → letter` table. Propositions the automaton does not mention
/// are dropped, so states whose label only uses such names read as `∅`.
#[derive(Clone, Debug)]
pub(crate) struct LabelIndex {
    letters: Vec<PropSet>,
    labeled: Vec<usize>,
}

impl LabelIndex {
    pub(crate) fn new<T: TransitionSystem>(ts: &T, automaton: &BuchiAutomaton) -> Self {
        let mut letters = vec![PropSet::EMPTY; ts.state_count()];
        let mut labeled = Vec::new();
        for (s, names) in ts.labeled_states() {
            let letter = automaton.letter(names.iter().map(String::as_str));
            if !letter.is_empty() && ts.is_state(s) {
                letters[s] = letter;
                labeled.push(s);
            }
        }
        LabelIndex { letters, labeled }
    }

    #[inline]
    pub(crate) fn letter(&self, s: usize) -> PropSet {
        self.letters[s]
    }

    /// States with a non-empty letter, in increasing id order.
    pub(crate) fn labeled(&self) -> &[usize] {
        &self.labeled
    }
}
