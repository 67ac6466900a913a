//! Ultimately periodic words and the two acceptance oracles over them.

use std::collections::{BTreeSet, VecDeque};

use super::buchi::{BuchiAutomaton, PropSet};
use super::{Formula, LtlError};

/// The infinite word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWord {
    prefix: Vec<BTreeSet<String>>,
    period: Vec<BTreeSet<String>>,
}

impl LassoWord {
    pub fn new(prefix: Vec<BTreeSet<String>>, period: Vec<BTreeSet<String>>) -> Result<Self, LtlError> {
        if period.is_empty() {
            return Err(LtlError::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// Convenience constructor from slices of proposition names.
    pub fn from_names(prefix: &[&[&str]], period: &[&[&str]]) -> Result<Self, LtlError> {
        let conv = |letters: &[&[&str]]| -> Vec<BTreeSet<String>> {
            letters.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect()
        };
        LassoWord::new(conv(prefix), conv(period))
    }

    pub fn prefix(&self) -> &[BTreeSet<String>] {
        &self.prefix
    }

    pub fn period(&self) -> &[BTreeSet<String>] {
        &self.period
    }

    /// Positions `0..len()` cover the prefix and one copy of the period.
    fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    fn letter(&self, pos: usize) -> &BTreeSet<String> {
        if pos < self.prefix.len() {
            &self.prefix[pos]
        } else {
            &self.period[pos - self.prefix.len()]
        }
    }

    fn successor(&self, pos: usize) -> usize {
        if pos + 1 < self.len() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }
}

/// Truth value of `formula` at position 0 of `word`.
///
/// Every subformula is tabulated over the prefix plus one period; `Until`
/// and `Release` are solved as least and greatest fixpoints on the loop.
pub fn eval_ltl_on_lasso(formula: &Formula, word: &LassoWord) -> bool {
    evaluate(formula, word)[0]
}

fn evaluate(formula: &Formula, word: &LassoWord) -> Vec<bool> {
    let n = word.len();
    match formula {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(name) => (0..n).map(|i| word.letter(i).contains(name)).collect(),
        Formula::Not(x) => evaluate(x, word).into_iter().map(|v| !v).collect(),
        Formula::And(xs) => xs.iter().fold(vec![true; n], |acc, x| {
            acc.into_iter().zip(evaluate(x, word)).map(|(a, b)| a && b).collect()
        }),
        Formula::Or(xs) => xs.iter().fold(vec![false; n], |acc, x| {
            acc.into_iter().zip(evaluate(x, word)).map(|(a, b)| a || b).collect()
        }),
        Formula::Next(x) => {
            let inner = evaluate(x, word);
            (0..n).map(|i| inner[word.successor(i)]).collect()
        }
        Formula::Until(a, b) => until_fixpoint(&evaluate(a, word), &evaluate(b, word), word),
        Formula::Release(a, b) => release_fixpoint(&evaluate(a, word), &evaluate(b, word), word),
        Formula::Always(x) => release_fixpoint(&vec![false; n], &evaluate(x, word), word),
        Formula::Eventually(x) => until_fixpoint(&vec![true; n], &evaluate(x, word), word),
    }
}

fn until_fixpoint(a: &[bool], b: &[bool], word: &LassoWord) -> Vec<bool> {
    let mut value = vec![false; a.len()];
    loop {
        let mut changed = false;
        for i in (0..a.len()).rev() {
            let v = b[i] || (a[i] && value[word.successor(i)]);
            if v != value[i] {
                value[i] = v;
                changed = true;
            }
        }
        if !changed {
            return value;
        }
    }
}

fn release_fixpoint(a: &[bool], b: &[bool], word: &LassoWord) -> Vec<bool> {
    let mut value = vec![true; a.len()];
    loop {
        let mut changed = false;
        for i in (0..a.len()).rev() {
            let v = b[i] && (a[i] || value[word.successor(i)]);
            if v != value[i] {
                value[i] = v;
                changed = true;
            }
        }
        if !changed {
            return value;
        }
    }
}

/// Whether some run of `automaton` on `word` visits an accepting state
/// infinitely often.
///
/// Explores the finite product of automaton states and word positions and
/// looks for a reachable accepting node that lies on a cycle.
pub fn lasso_accepts(automaton: &BuchiAutomaton, word: &LassoWord) -> bool {
    if automaton.accepting().is_empty() {
        return false;
    }
    let n = word.len();
    let letters: Vec<PropSet> =
        (0..n).map(|i| automaton.letter(word.letter(i).iter().map(String::as_str))).collect();
    let node = |q: usize, pos: usize| q * n + pos;
    let successors = |id: usize| -> Vec<usize> {
        let (q, pos) = (id / n, id % n);
        let next = word.successor(pos);
        automaton
            .outgoing(q)
            .filter(|t| t.clause.satisfied_by(letters[pos]))
            .map(|t| node(t.to, next))
            .collect()
    };

    let total = automaton.state_count() * n;
    let mut reachable = vec![false; total];
    let start = node(automaton.initial(), 0);
    reachable[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(id) = queue.pop_front() {
        for s in successors(id) {
            if !reachable[s] {
                reachable[s] = true;
                queue.push_back(s);
            }
        }
    }

    let on_cycle = |target: usize| -> bool {
        let mut seen = vec![false; total];
        let mut queue: VecDeque<usize> = successors(target).into();
        while let Some(id) = queue.pop_front() {
            if id == target {
                return true;
            }
            if !seen[id] {
                seen[id] = true;
                queue.extend(successors(id));
            }
        }
        false
    };
    (0..total)
        .filter(|&id| reachable[id] && automaton.is_accepting(id / n) && id % n >= word.prefix.len())
        .any(on_cycle)
}
