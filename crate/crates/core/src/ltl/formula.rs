use std::collections::BTreeSet;
use std::fmt;

/// LTL abstract syntax.
///
/// `And`/`Or` are n-ary. Implication is desugared by the parser into `Or`.
/// `Always`/`Eventually` are surface sugar; [`Formula::to_nnf`] rewrites them
/// to `Release`/`Until`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Always(Box<Formula>),
    Eventually(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Self {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Self {
        Formula::Or(children)
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Self {
        Formula::Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn release(lhs: Formula, rhs: Formula) -> Self {
        Formula::Release(Box::new(lhs), Box::new(rhs))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(vec![Formula::not(lhs), rhs])
    }

    /// Every proposition name occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.collect_atoms(out)),
            Formula::Not(x) | Formula::Next(x) | Formula::Always(x) | Formula::Eventually(x) => {
                x.collect_atoms(out)
            }
            Formula::Until(a, b) | Formula::Release(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::And(xs) | Formula::Or(xs) => 1 + xs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Not(x) | Formula::Next(x) | Formula::Always(x) | Formula::Eventually(x) => {
                1 + x.depth()
            }
            Formula::Until(a, b) | Formula::Release(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// True when negations sit only on atoms and no `Always`/`Eventually`
    /// sugar remains.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(x) => matches!(**x, Formula::Atom(_)),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().all(Formula::is_nnf),
            Formula::Next(x) => x.is_nnf(),
            Formula::Until(a, b) | Formula::Release(a, b) => a.is_nnf() && b.is_nnf(),
            Formula::Always(_) | Formula::Eventually(_) => false,
        }
    }

    /// Negation normal form over the core operators plus `Release`.
    ///
    /// Nested conjunctions and disjunctions are flattened and singleton
    /// `And`/`Or` collapse to their child, which makes the result idempotent.
    pub fn to_nnf(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(name) => Formula::Atom(name.clone()),
            Formula::Not(x) => x.negated_nnf(),
            Formula::And(xs) => flatten_and(xs.iter().map(Formula::to_nnf)),
            Formula::Or(xs) => flatten_or(xs.iter().map(Formula::to_nnf)),
            Formula::Next(x) => Formula::next(x.to_nnf()),
            Formula::Until(a, b) => Formula::until(a.to_nnf(), b.to_nnf()),
            Formula::Release(a, b) => Formula::release(a.to_nnf(), b.to_nnf()),
            Formula::Always(x) => Formula::release(Formula::False, x.to_nnf()),
            Formula::Eventually(x) => Formula::until(Formula::True, x.to_nnf()),
        }
    }

    /// NNF of `!self`.
    fn negated_nnf(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(name) => Formula::not(Formula::Atom(name.clone())),
            Formula::Not(x) => x.to_nnf(),
            Formula::And(xs) => flatten_or(xs.iter().map(Formula::negated_nnf)),
            Formula::Or(xs) => flatten_and(xs.iter().map(Formula::negated_nnf)),
            Formula::Next(x) => Formula::next(x.negated_nnf()),
            Formula::Until(a, b) => Formula::release(a.negated_nnf(), b.negated_nnf()),
            Formula::Release(a, b) => Formula::until(a.negated_nnf(), b.negated_nnf()),
            Formula::Always(x) => Formula::until(Formula::True, x.negated_nnf()),
            Formula::Eventually(x) => Formula::release(Formula::False, x.negated_nnf()),
        }
    }
}

fn flatten_and(children: impl Iterator<Item = Formula>) -> Formula {
    let mut out = Vec::new();
    for child in children {
        match child {
            Formula::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Formula::And(out)
    }
}

fn flatten_or(children: impl Iterator<Item = Formula>) -> Formula {
    let mut out = Vec::new();
    for child in children {
        match child {
            Formula::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Formula::Or(out)
    }
}

/// Prints the formula in the same surface syntax the parser accepts, fully
/// parenthesised around binary operators.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(x) => write!(f, "!{x}"),
            Formula::And(xs) | Formula::Or(xs) => {
                let op = if matches!(self, Formula::And(_)) { " && " } else { " || " };
                if xs.is_empty() {
                    let unit = if matches!(self, Formula::And(_)) { "true" } else { "false" };
                    return write!(f, "{unit}");
                }
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{op}")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Formula::Next(x) => write!(f, "X {x}"),
            Formula::Until(a, b) => write!(f, "({a} U {b})"),
            Formula::Release(a, b) => write!(f, "({a} R {b})"),
            Formula::Always(x) => write!(f, "[]{x}"),
            Formula::Eventually(x) => write!(f, "<>{x}"),
        }
    }
}
