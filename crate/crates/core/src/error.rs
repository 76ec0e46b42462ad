use thiserror::Error;

/// Rejected node, motion or unit construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NodeError {
    #[error("object name is empty")]
    EmptyName,
    #[error("motion label is empty")]
    EmptyMotion,
    #[error("functional unit has no inputs")]
    NoInputs,
    #[error("functional unit has no outputs")]
    NoOutputs,
    #[error("{field} {value:?} contains a reserved character ('|', ',', '[', ']', tab or newline)")]
    ReservedChar { field: &'static str, value: String },
    #[error("malformed object key {0:?}: expected name|states|ingredients")]
    BadKey(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("line {line}: rate {rate} for motion {label:?} is outside [0, 1]")]
    RateOutOfRange { line: usize, label: String, rate: f64 },
    #[error("line {line}: {label:?} is listed more than once")]
    DuplicateLabel { line: usize, label: String },
}

impl ParseError {
    pub(crate) fn line(line: usize, reason: impl Into<String>) -> Self {
        ParseError::MalformedLine {
            line,
            reason: reason.into(),
        }
    }

    /// One-based line number, when the error has one.
    pub fn line_number(&self) -> Option<usize> {
        match self {
            ParseError::MalformedLine { line, .. }
            | ParseError::RateOutOfRange { line, .. }
            | ParseError::DuplicateLabel { line, .. } => Some(*line),
            ParseError::MalformedDocument(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetrievalError {
    #[error("goal {0:?} is not produced by any functional unit and is not in the kitchen")]
    GoalNotFound(String),
    #[error("{0:?} has no producing unit, no substitute and is not in the kitchen")]
    UnreachableGoal(String),
    #[error("no task tree found within depth {0}")]
    NoSolutionWithinDepth(usize),
    #[error("task tree steps depend on each other cyclically")]
    CyclicDependency,
    #[error("goal name {name:?} matches several objects: {matches:?}")]
    AmbiguousGoal { name: String, matches: Vec<String> },
    #[error("depth ceiling must be at least 1")]
    InvalidDepthCeiling,
}
