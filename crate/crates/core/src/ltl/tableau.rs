//! LTL to Büchi translation.
//!
//! Tableau expansion produces a transition-based generalized Büchi automaton
//! whose states are sets of pending obligations. Each `a U b` contributes
//! one acceptance set: the transitions that did not postpone it. The
//! generalized condition is then degeneralized with a level counter.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::buchi::{BuchiAutomaton, LiteralClause, PropSet, Transition};
use super::{Formula, LtlError};

/// One way of discharging a state's obligations for a single step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Cover {
    clause: LiteralClause,
    next: BTreeSet<Formula>,
    /// Indices of the untils postponed by this step.
    postponed: BTreeSet<usize>,
}

impl Cover {
    /// `self` makes `other` redundant: it is enabled on every letter `other`
    /// is, leaves fewer obligations and postpones fewer untils.
    fn dominates(&self, other: &Cover) -> bool {
        other.clause.implies(&self.clause)
            && self.next.is_subset(&other.next)
            && self.postponed.is_subset(&other.postponed)
    }
}

#[derive(Clone)]
struct Branch {
    todo: Vec<Formula>,
    done: BTreeSet<Formula>,
    positive: PropSet,
    negative: PropSet,
    next: BTreeSet<Formula>,
    postponed: BTreeSet<usize>,
}

struct Tableau {
    props: Vec<String>,
    untils: Vec<Formula>,
}

impl Tableau {
    fn prop(&self, name: &str) -> usize {
        self.props.iter().position(|p| p == name).expect("atom collected into universe")
    }

    fn until_index(&self, f: &Formula) -> usize {
        self.untils.binary_search(f).expect("until collected into universe")
    }

    fn expand(&self, obligations: &BTreeSet<Formula>) -> Vec<Cover> {
        let mut covers = Vec::new();
        let mut stack = vec![Branch {
            todo: obligations.iter().cloned().collect(),
            done: BTreeSet::new(),
            positive: PropSet::EMPTY,
            negative: PropSet::EMPTY,
            next: BTreeSet::new(),
            postponed: BTreeSet::new(),
        }];
        'branches: while let Some(mut branch) = stack.pop() {
            while let Some(f) = branch.todo.pop() {
                if !branch.done.insert(f.clone()) {
                    continue;
                }
                match f {
                    Formula::True => {}
                    Formula::False => continue 'branches,
                    Formula::Atom(ref name) => {
                        let i = self.prop(name);
                        if branch.negative.contains(i) {
                            continue 'branches;
                        }
                        branch.positive.insert(i);
                    }
                    Formula::Not(ref inner) => {
                        let Formula::Atom(name) = inner.as_ref() else {
                            unreachable!("tableau input is in negation normal form")
                        };
                        let i = self.prop(name);
                        if branch.positive.contains(i) {
                            continue 'branches;
                        }
                        branch.negative.insert(i);
                    }
                    Formula::And(ref xs) => branch.todo.extend(xs.iter().cloned()),
                    Formula::Or(ref xs) => {
                        // Branch i also takes the negations of earlier
                        // propositional disjuncts so branches overlap less.
                        for (i, x) in xs.iter().enumerate().skip(1) {
                            let mut alt = branch.clone();
                            alt.todo.push(x.clone());
                            alt.todo.extend(xs[..i].iter().filter(|y| is_propositional(y)).map(negate));
                            stack.push(alt);
                        }
                        match xs.first() {
                            Some(x) => branch.todo.push(x.clone()),
                            None => continue 'branches,
                        }
                    }
                    Formula::Next(ref x) => {
                        branch.next.insert((**x).clone());
                    }
                    Formula::Until(ref a, ref b) => {
                        // a U b  ==  b  ||  (a && X(a U b))
                        let mut later = branch.clone();
                        later.todo.push((**a).clone());
                        if is_propositional(b) {
                            later.todo.push(negate(b));
                        }
                        later.postponed.insert(self.until_index(&f));
                        later.next.insert(f.clone());
                        stack.push(later);
                        branch.todo.push((**b).clone());
                    }
                    Formula::Release(ref a, ref b) => {
                        // a R b  ==  (a && b)  ||  (b && X(a R b))
                        let mut later = branch.clone();
                        later.todo.push((**b).clone());
                        if is_propositional(a) {
                            later.todo.push(negate(a));
                        }
                        later.next.insert(f.clone());
                        stack.push(later);
                        if **a == Formula::False {
                            continue 'branches;
                        }
                        branch.todo.push((**a).clone());
                        branch.todo.push((**b).clone());
                    }
                    Formula::Always(_) | Formula::Eventually(_) => {
                        unreachable!("tableau input is in negation normal form")
                    }
                }
            }
            let clause = LiteralClause::new(branch.positive, branch.negative)
                .expect("contradictory literals pruned during expansion");
            covers.push(Cover { clause, next: branch.next, postponed: branch.postponed });
        }
        covers.sort();
        covers.dedup();
        let kept: Vec<bool> = (0..covers.len())
            .map(|i| !(0..covers.len()).any(|j| j != i && covers[j].dominates(&covers[i])))
            .collect();
        covers.into_iter().zip(kept).filter_map(|(c, keep)| keep.then_some(c)).collect()
    }
}

fn is_propositional(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => true,
        Formula::Not(x) => is_propositional(x),
        Formula::And(xs) | Formula::Or(xs) => xs.iter().all(is_propositional),
        _ => false,
    }
}

fn negate(f: &Formula) -> Formula {
    Formula::not(f.clone()).to_nnf()
}

fn collect_untils(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => {}
        Formula::Not(x) | Formula::Next(x) | Formula::Always(x) | Formula::Eventually(x) => {
            collect_untils(x, out)
        }
        Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| collect_untils(x, out)),
        Formula::Until(a, b) => {
            out.insert(f.clone());
            collect_untils(a, out);
            collect_untils(b, out);
        }
        Formula::Release(a, b) => {
            collect_untils(a, out);
            collect_untils(b, out);
        }
    }
}

/// Generalized automaton: states keyed by their cover lists.
struct Generalized {
    initial: usize,
    /// Per state: (clause, target, postponed untils).
    edges: Vec<Vec<(LiteralClause, usize, BTreeSet<usize>)>>,
}

fn build_generalized(tableau: &Tableau, root: Formula) -> Generalized {
    let mut by_obligations: HashMap<BTreeSet<Formula>, usize> = HashMap::new();
    let mut by_covers: HashMap<Vec<Cover>, usize> = HashMap::new();
    let mut covers_of: Vec<Vec<Cover>> = Vec::new();

    let mut intern = |obligations: BTreeSet<Formula>,
                      by_covers: &mut HashMap<Vec<Cover>, usize>,
                      covers_of: &mut Vec<Vec<Cover>>,
                      queue: &mut VecDeque<usize>|
     -> usize {
        if let Some(&id) = by_obligations.get(&obligations) {
            return id;
        }
        let covers = tableau.expand(&obligations);
        let id = *by_covers.entry(covers.clone()).or_insert_with(|| {
            covers_of.push(covers);
            queue.push_back(covers_of.len() - 1);
            covers_of.len() - 1
        });
        by_obligations.insert(obligations, id);
        id
    };

    let mut queue = VecDeque::new();
    let initial = intern(BTreeSet::from([root]), &mut by_covers, &mut covers_of, &mut queue);
    let mut edges: Vec<Vec<(LiteralClause, usize, BTreeSet<usize>)>> = Vec::new();
    while let Some(state) = queue.pop_front() {
        let covers = covers_of[state].clone();
        let mut out = Vec::with_capacity(covers.len());
        for cover in covers {
            let target = intern(cover.next, &mut by_covers, &mut covers_of, &mut queue);
            out.push((cover.clause, target, cover.postponed));
        }
        if edges.len() <= state {
            edges.resize(state + 1, Vec::new());
        }
        edges[state] = out;
    }
    edges.resize(covers_of.len(), Vec::new());
    Generalized { initial, edges }
}

/// Translates an LTL formula into a language-equivalent Büchi automaton.
///
/// The formula is normalized to NNF first; unsatisfiable formulas yield an
/// automaton with an empty language.
pub fn translate_to_buchi(formula: &Formula) -> Result<BuchiAutomaton, LtlError> {
    let root = formula.to_nnf();
    let props: Vec<String> = root.atoms().into_iter().collect();
    if props.len() > PropSet::CAPACITY {
        return Err(LtlError::TooManyPropositions(props.len()));
    }
    let mut untils = BTreeSet::new();
    collect_untils(&root, &mut untils);
    let tableau = Tableau { props, untils: untils.into_iter().collect() };
    let generalized = build_generalized(&tableau, root);
    degeneralize(&tableau, &generalized)
}

fn degeneralize(tableau: &Tableau, g: &Generalized) -> Result<BuchiAutomaton, LtlError> {
    let k = tableau.untils.len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut transitions: Vec<Transition> = Vec::new();
    let mut queue = VecDeque::new();

    index.insert((g.initial, 0), 0);
    keys.push((g.initial, 0));
    queue.push_back(0);
    while let Some(id) = queue.pop_front() {
        let (state, level) = keys[id];
        let base = if level == k { 0 } else { level };
        for (clause, target, postponed) in &g.edges[state] {
            let mut next_level = base;
            while next_level < k && !postponed.contains(&next_level) {
                next_level += 1;
            }
            let key = (*target, next_level);
            let to = *index.entry(key).or_insert_with(|| {
                keys.push(key);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            transitions.push(Transition { from: id, clause: *clause, to });
        }
    }
    let accepting: BTreeSet<usize> =
        keys.iter().enumerate().filter(|(_, &(_, level))| level == k).map(|(i, _)| i).collect();
    let names = (0..keys.len()).map(|i| format!("q{i}")).collect();
    let raw = BuchiAutomaton::new(tableau.props.clone(), names, 0, accepting, transitions)?;
    trim(raw)
}

/// Drops states that cannot reach an accepting cycle or are unreachable,
/// renumbers the rest in breadth-first order and removes parallel
/// transitions implied by a weaker parallel clause.
fn trim(raw: BuchiAutomaton) -> Result<BuchiAutomaton, LtlError> {
    let live = raw.live_states();
    let props = raw.propositions().to_vec();
    if !live[raw.initial()] {
        return BuchiAutomaton::new(props, vec!["q0".into()], 0, BTreeSet::new(), Vec::new());
    }
    let mut order: Vec<usize> = vec![raw.initial()];
    let mut renumber = vec![usize::MAX; raw.state_count()];
    renumber[raw.initial()] = 0;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for t in raw.outgoing(q) {
            if live[t.to] && renumber[t.to] == usize::MAX {
                renumber[t.to] = order.len();
                order.push(t.to);
            }
        }
    }
    let mut transitions = Vec::new();
    for &q in &order {
        let mut out: Vec<Transition> = raw
            .outgoing(q)
            .filter(|t| live[t.to])
            .map(|t| Transition { from: renumber[q], clause: t.clause, to: renumber[t.to] })
            .collect();
        out.sort();
        out.dedup();
        let kept: Vec<Transition> = out
            .iter()
            .filter(|t| {
                !out.iter().any(|u| u != *t && u.to == t.to && t.clause.implies(&u.clause))
            })
            .copied()
            .collect();
        transitions.extend(kept);
    }
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, &q)| raw.is_accepting(q))
        .map(|(i, _)| i)
        .collect();
    let names = (0..order.len()).map(|i| format!("q{i}")).collect();
    BuchiAutomaton::new(props, names, 0, accepting, transitions)
}
