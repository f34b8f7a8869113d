use std::fmt;

/// A 1-based line/column position in some source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

fn at(pos: &Option<Pos>) -> String {
    match pos {
        Some(p) => format!("{p}: "),
        None => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },

    #[error("{}unknown atom `{name}`", at(pos))]
    UnknownAtom { name: String, pos: Option<Pos> },

    #[error("{}invalid atom name `{name}` (expected [a-z][a-z0-9_]*, not a keyword)", at(pos))]
    InvalidAtomName { name: String, pos: Option<Pos> },

    #[error("{}invalid name `{name}`", at(pos))]
    InvalidName { name: String, pos: Option<Pos> },

    #[error("{}duplicate name `{name}`", at(pos))]
    DuplicateName { name: String, pos: Option<Pos> },

    #[error("{}`{name}` is used before its declaration", at(pos))]
    ForwardReference { name: String, pos: Option<Pos> },

    #[error("{}unknown specification `{name}`", at(pos))]
    UnknownSpec { name: String, pos: Option<Pos> },

    #[error("{}duplicate value for `{name}`", at(pos))]
    DuplicateValue { name: String, pos: Option<Pos> },

    #[error("{}invalid value {value} for `{name}` (must be a nonnegative number)", at(pos))]
    InvalidValue { name: String, value: f64, pos: Option<Pos> },

    #[error("{}duplicate annotation `{key}` on `{spec}`", at(pos))]
    DuplicateAnnotation {
        spec: String,
        key: String,
        pos: Option<Pos>,
    },

    #[error("{}a scenario may declare at most one `necessary` block", at(pos))]
    DuplicateNecessary { pos: Option<Pos> },

    #[error("vocabulary of {size} atoms exceeds the limit of {limit}")]
    VocabularyTooLarge { size: usize, limit: usize },

    #[error("unknown entailment engine `{name}` (available: {available})")]
    UnknownEngine { name: String, available: String },

    #[error("unknown candidate space `{name}` (available: {available})")]
    UnknownCandidateSpace { name: String, available: String },

    #[error("epsilon must be a nonnegative number, got {value}")]
    InvalidEpsilon { value: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
