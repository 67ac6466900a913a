use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::LtlError;

/// A set of propositions, stored as a bit mask over an automaton's ordered
/// proposition universe.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropSet(u64);

impl PropSet {
    /// Maximum number of propositions a universe may hold.
    pub const CAPACITY: usize = 64;
    pub const EMPTY: PropSet = PropSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PropSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < Self::CAPACITY);
        PropSet(1 << index)
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1 << index;
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: PropSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: PropSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: PropSet) -> PropSet {
        PropSet(self.0 | other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..Self::CAPACITY).filter(move |&i| self.contains(i))
    }
}

/// Negative/positive taxonomy of transition conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// Only negated propositions (including the empty clause `true`).
    Negative,
    /// At least one positive proposition.
    Positive,
}

/// A satisfiable conjunction of literals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralClause {
    positive: PropSet,
    negative: PropSet,
}

impl LiteralClause {
    /// The empty conjunction.
    pub const TRUE: LiteralClause = LiteralClause { positive: PropSet::EMPTY, negative: PropSet::EMPTY };

    /// Returns `None` when some proposition appears both positively and
    /// negatively.
    pub fn new(positive: PropSet, negative: PropSet) -> Option<Self> {
        if positive.intersects(negative) {
            None
        } else {
            Some(LiteralClause { positive, negative })
        }
    }

    pub fn positive(&self) -> PropSet {
        self.positive
    }

    pub fn negative(&self) -> PropSet {
        self.negative
    }

    pub fn classify(&self) -> ClauseKind {
        if self.positive.is_empty() {
            ClauseKind::Negative
        } else {
            ClauseKind::Positive
        }
    }

    pub fn is_negative(&self) -> bool {
        self.classify() == ClauseKind::Negative
    }

    /// `positive ⊆ labels` and `negative ∩ labels = ∅`.
    #[inline]
    pub fn satisfied_by(&self, labels: PropSet) -> bool {
        self.positive.is_subset(labels) && !self.negative.intersects(labels)
    }

    /// Every letter satisfying `self` also satisfies `other`.
    pub fn implies(&self, other: &LiteralClause) -> bool {
        other.positive.is_subset(self.positive) && other.negative.is_subset(self.negative)
    }

    pub fn display<'a>(&'a self, propositions: &'a [String]) -> impl fmt::Display + 'a {
        ClauseDisplay { clause: self, propositions }
    }
}

struct ClauseDisplay<'a> {
    clause: &'a LiteralClause,
    propositions: &'a [String],
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clause.positive.is_empty() && self.clause.negative.is_empty() {
            return write!(f, "true");
        }
        let mut first = true;
        for (i, name) in self.propositions.iter().enumerate() {
            let literal = if self.clause.positive.contains(i) {
                ""
            } else if self.clause.negative.contains(i) {
                "!"
            } else {
                continue;
            };
            if !first {
                write!(f, " & ")?;
            }
            first = false;
            write!(f, "{literal}{name}")?;
        }
        Ok(())
    }
}

/// One symbolic transition `(from, clause, to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub clause: LiteralClause,
    pub to: usize,
}

/// A nondeterministic Büchi automaton over `2^propositions` whose transitions
/// carry literal clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    propositions: Vec<String>,
    state_names: Vec<String>,
    initial: usize,
    accepting: BTreeSet<usize>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
}

impl BuchiAutomaton {
    /// Builds an automaton, checking that states and clause propositions are
    /// in range.
    pub fn new(
        propositions: Vec<String>,
        state_names: Vec<String>,
        initial: usize,
        accepting: BTreeSet<usize>,
        transitions: Vec<Transition>,
    ) -> Result<Self, LtlError> {
        if propositions.len() > PropSet::CAPACITY {
            return Err(LtlError::TooManyPropositions(propositions.len()));
        }
        let n = state_names.len();
        if initial >= n {
            return Err(LtlError::Schema(format!("initial state index {initial} out of range")));
        }
        if let Some(q) = accepting.iter().find(|&&q| q >= n) {
            return Err(LtlError::Schema(format!("accepting state index {q} out of range")));
        }
        let universe = if propositions.len() == 64 { u64::MAX } else { (1u64 << propositions.len()) - 1 };
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            if t.from >= n || t.to >= n {
                return Err(LtlError::Schema(format!("transition {i} references a missing state")));
            }
            let used = t.clause.positive.union(t.clause.negative);
            if !used.is_subset(PropSet(universe)) {
                return Err(LtlError::Schema(format!(
                    "transition {i} uses propositions outside the declared universe"
                )));
            }
            outgoing[t.from].push(i);
        }
        Ok(BuchiAutomaton { propositions, state_names, initial, accepting, transitions, outgoing })
    }

    pub fn propositions(&self) -> &[String] {
        &self.propositions
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.state_names[q]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, q: usize) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[q].iter().map(move |&i| &self.transitions[i])
    }

    pub fn proposition_index(&self, name: &str) -> Option<usize> {
        self.propositions.iter().position(|p| p == name)
    }

    /// Projects a set of proposition names onto this automaton's universe;
    /// names the automaton never mentions are irrelevant to every clause and
    /// are dropped.
    pub fn letter<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> PropSet {
        let mut set = PropSet::EMPTY;
        for name in names {
            if let Some(i) = self.proposition_index(name) {
                set.insert(i);
            }
        }
        set
    }

    /// Clauses of the negative self-loops on `q`.
    pub fn negative_self_loops(&self, q: usize) -> Vec<LiteralClause> {
        self.outgoing(q)
            .filter(|t| t.to == q && t.clause.is_negative())
            .map(|t| t.clause)
            .collect()
    }

    /// `q` has a negative self-loop and no negative transition to any other
    /// state, so runs may skip through negative-self-loop cells in one
    /// abstract step.
    pub fn admits_distant_neighbours(&self, q: usize) -> bool {
        let mut has_self_loop = false;
        for t in self.outgoing(q).filter(|t| t.clause.is_negative()) {
            if t.to == q {
                has_self_loop = true;
            } else {
                return false;
            }
        }
        has_self_loop
    }

    /// States from which some accepting state is reachable that lies on a
    /// cycle.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let reaches = |from: usize, target: usize| -> bool {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<usize> = self.outgoing(from).map(|t| t.to).collect();
            while let Some(q) = queue.pop_front() {
                if q == target {
                    return true;
                }
                if !seen[q] {
                    seen[q] = true;
                    queue.extend(self.outgoing(q).map(|t| t.to));
                }
            }
            false
        };
        let mut live = vec![false; n];
        let mut queue = VecDeque::new();
        for &q in &self.accepting {
            if reaches(q, q) {
                live[q] = true;
                queue.push_back(q);
            }
        }
        let mut incoming = vec![Vec::new(); n];
        for t in &self.transitions {
            incoming[t.to].push(t.from);
        }
        while let Some(q) = queue.pop_front() {
            for &p in &incoming[q] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    pub fn to_document(&self) -> AutomatonDocument {
        AutomatonDocument {
            propositions: self.propositions.clone(),
            states: self.state_names.clone(),
            initial: self.state_names[self.initial].clone(),
            accepting: self.accepting.iter().map(|&q| self.state_names[q].clone()).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionDocument {
                    from: self.state_names[t.from].clone(),
                    to: self.state_names[t.to].clone(),
                    clause: t.clause.display(&self.propositions).to_string(),
                })
                .collect(),
        }
    }
}

/// Interchange form of a [`BuchiAutomaton`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub propositions: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDocument {
    pub from: String,
    pub to: String,
    pub clause: String,
}

/// Parses a clause string such as `p1 & !p2 & !p3` or `true`.
pub fn parse_clause(text: &str, propositions: &[String]) -> Result<LiteralClause, LtlError> {
    let trimmed = text.trim();
    if trimmed == "true" {
        return Ok(LiteralClause::TRUE);
    }
    let mut positive = PropSet::EMPTY;
    let mut negative = PropSet::EMPTY;
    for literal in trimmed.split('&') {
        let literal = literal.trim();
        let (negated, name) = match literal.strip_prefix('!') {
            Some(rest) => (true, rest.trim()),
            None => (false, literal),
        };
        if name.is_empty() {
            return Err(LtlError::Schema(format!("empty literal in clause '{text}'")));
        }
        let index = propositions
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| LtlError::Schema(format!("clause '{text}' uses undeclared proposition '{name}'")))?;
        if negated {
            negative.insert(index);
        } else {
            positive.insert(index);
        }
    }
    LiteralClause::new(positive, negative).ok_or_else(|| LtlError::UnsatisfiableClause(text.to_string()))
}

/// Loads an automaton from its JSON interchange document.
pub fn import_automaton(document: &str) -> Result<BuchiAutomaton, LtlError> {
    let doc: AutomatonDocument =
        serde_json::from_str(document).map_err(|e| LtlError::Schema(e.to_string()))?;
    from_document(&doc)
}

pub fn from_document(doc: &AutomatonDocument) -> Result<BuchiAutomaton, LtlError> {
    let mut index = BTreeMap::new();
    for (i, name) in doc.states.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LtlError::Schema(format!("state '{name}' declared twice")));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| LtlError::Schema(format!("undeclared state '{name}'")))
    };
    let initial = lookup(&doc.initial)?;
    let accepting = doc.accepting.iter().map(|q| lookup(q)).collect::<Result<BTreeSet<_>, _>>()?;
    let transitions = doc
        .transitions
        .iter()
        .map(|t| {
            Ok(Transition {
                from: lookup(&t.from)?,
                clause: parse_clause(&t.clause, &doc.propositions)?,
                to: lookup(&t.to)?,
            })
        })
        .collect::<Result<Vec<_>, LtlError>>()?;
    BuchiAutomaton::new(doc.propositions.clone(), doc.states.clone(), initial, accepting, transitions)
}
