use std::fmt;

use thiserror::Error;

/// A syntax error at a byte offset of the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid team: {0}")]
    InvalidTeam(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is free in the formula but not bound by the team")]
    UnboundVariable(String),
    #[error("variable `{0}` listed twice")]
    DuplicateVariable(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown quantifier `{0}`")]
    UnknownQuantifier(String),
    #[error("quantifier `{0}` is already defined")]
    DuplicateQuantifier(String),
    #[error("quantifier `{0}` is not monotone")]
    NonMonotone(String),
    #[error("domain size mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("family of relations is not closed downwards")]
    NotDownSet,
    #[error("slashed variable `{0}` is not in the domain of the team")]
    SlashOutsideTeam(String),
    #[error("formula is outside the first-order fragment: {0}")]
    FragmentViolation(String),
    #[error("formula is not normal: {0}")]
    NotNormal(String),
    #[error("formula has free variables: {0}")]
    NotASentence(String),
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
