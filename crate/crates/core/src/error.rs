use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxAt { line: usize, column: usize, message: String },
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(String),
    #[error("invalid hesitant element: {0}")]
    InvalidThfe(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("missing transition for state {state:?} on symbol {symbol:?}")]
    IncompleteTransition { state: String, symbol: String },
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },
    #[error("closure budget of {limit} elements exceeded")]
    ClosureBudgetExceeded { limit: usize },
    #[error("word of length {len} exceeds the reference bound {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: String, found: String },
}
