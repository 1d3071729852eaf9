use std::fmt;

/// Everything that can go wrong across the library.
///
/// Positions carried by variants are 1-based, as they appear in text files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Text could not be parsed.
    Syntax { line: usize, column: usize, message: String },
    /// A layer is not a partition of `{1..n}`.
    Partition { layer: usize, index: usize, message: String },
    /// An input vector has the wrong length.
    InputShape { expected: usize, actual: usize },
    /// An argument is outside the domain of an operation.
    Domain(String),
    /// Exhaustive verification refused because `n` exceeds the cap.
    Capacity { n: usize, cap: usize },
    /// Virtual cells do not finish in the highest output positions.
    ProjectionInvalid(String),
    /// A growing branch is malformed at `step` (index of the offending input).
    InvalidBranch { step: usize, message: String },
    /// A certificate precondition failed at branch input `index` (0-based).
    Precondition { index: usize, message: String },
    /// A strategy cannot be applied to this network.
    StrategyInapplicable(String),
    /// A network cannot be mapped into a cube game.
    MappingInapplicable(String),
    /// A cube configuration breaks one of its bounds.
    InvalidConfig(String),
    /// A removal plan cannot be replayed.
    Replay { step: usize, message: String },
    /// A plan and the network state it is applied to disagree.
    Desync { step: usize, message: String },
    /// No acceptable substack selection within the retry budget.
    SelectionFailed { attempts: usize, label: usize, spread: usize, stacks: usize },
    /// Something that a proven lemma rules out; indicates a bug.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            Error::Partition { layer, index, message } => {
                write!(f, "layer {layer} is not a partition: index {index} {message}")
            }
            Error::InputShape { expected, actual } => {
                write!(f, "input has length {actual}, network expects {expected}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity { n, cap } => {
                write!(f, "n = {n} exceeds the exhaustive verification cap {cap}")
            }
            Error::ProjectionInvalid(msg) => write!(f, "projection invalid: {msg}"),
            Error::InvalidBranch { step, message } => {
                write!(f, "invalid growing branch at input {step}: {message}")
            }
            Error::Precondition { index, message } => {
                write!(f, "precondition failed at branch input {index}: {message}")
            }
            Error::StrategyInapplicable(msg) => write!(f, "strategy inapplicable: {msg}"),
            Error::MappingInapplicable(msg) => write!(f, "mapping inapplicable: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Replay { step, message } => write!(f, "replay error at step {step}: {message}"),
            Error::Desync { step, message } => {
                write!(f, "plan and network out of sync at step {step}: {message}")
            }
            Error::SelectionFailed { attempts, label, spread, stacks } => write!(
                f,
                "no substack selection found in {attempts} attempts; \
                 label {label} spread over {spread} of {stacks} windows (needs fewer than {stacks}/4)"
            ),
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
