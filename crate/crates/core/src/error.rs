use std::fmt;

use thiserror::Error;

use crate::node::Node;

/// A malformed line in one of the text formats. `line` is 1-based; 0 means
/// the error is not tied to a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A value violates one of its type's invariants.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("node {0} is not in the tree")]
    NotInTree(Node),

    #[error("passing number undefined: |{long}| must exceed |{short}|")]
    PassingUndefined { long: Node, short: Node },

    #[error("devlin order compares distinct nodes only, got {0} twice")]
    SameNode(Node),

    #[error("tree is not strongly diagonal")]
    NotDiagonal,

    #[error("coding node lengths must strictly increase (position {0})")]
    NonIncreasingLengths(usize),

    #[error("restriction r_{requested} exhausts a tree with {available} levels")]
    Exhausted { requested: usize, available: usize },

    #[error("search budget exceeded: {needed} evaluations needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A contract stated as a theorem failed on a concrete instance, for
    /// example a type with zero or several copies inside a strong tree.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("no (k+1)-level extensions of the given tree exist")]
    NoExtensions,

    #[error("construction failed at coding node {index}: {reason}")]
    Construction { index: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
