//! LTL queries: parsing, negation normal form, translation to Büchi
//! automata, automaton interchange and lasso-word oracles.

mod buchi;
mod formula;
mod lasso;
mod parser;
mod tableau;

use thiserror::Error;

pub use buchi::{
    from_document, import_automaton, parse_clause, AutomatonDocument, BuchiAutomaton, ClauseKind,
    LiteralClause, PropSet, Transition, TransitionDocument,
};
pub use formula::Formula;
pub use lasso::{eval_ltl_on_lasso, lasso_accepts, LassoWord};
pub use parser::parse_ltl;
pub use tableau::translate_to_buchi;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtlError {
    #[error("empty query")]
    EmptyInput,
    #[error("syntax error at byte {offset}: expected one of {}, found {found}", expected.join(", "))]
    Syntax { offset: usize, expected: Vec<String>, found: String },
    #[error("unknown character {ch:?} at byte {offset}")]
    UnknownCharacter { offset: usize, ch: char },
    #[error("too many propositions ({0}); at most 64 are supported")]
    TooManyPropositions(usize),
    #[error("invalid automaton document: {0}")]
    Schema(String),
    #[error("unsatisfiable clause '{0}'")]
    UnsatisfiableClause(String),
    #[error("lasso period must contain at least one letter")]
    EmptyPeriod,
}
