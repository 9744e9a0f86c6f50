use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while parsing vote data or running an analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: malformed record: {msg}")]
    MalformedRecord { line: usize, msg: String },

    #[error("line {line}: unknown choice {token:?} (expected \"A\", \"B\", or \"tie\")")]
    UnknownChoice { line: usize, token: String },

    #[error("line {line}: system_a and system_b are both {system:?}")]
    SelfComparison { line: usize, system: String },

    #[error("duplicate prompt_id {prompt_id:?} in prompt set")]
    DuplicatePrompt { prompt_id: String },

    #[error("prompt {prompt_id:?} has no non-empty turn")]
    EmptyPrompt { prompt_id: String },

    #[error("response set for {system_id:?} does not match the prompt set: {msg}")]
    ResponseMismatch { system_id: String, msg: String },

    #[error("comparison graph is disconnected; components: {components:?} (supply a damping pseudo-count to fit anyway)")]
    DisconnectedGraph { components: Vec<Vec<String>> },

    #[error("no decisive comparisons")]
    NoDecisiveComparisons,

    #[error("system {system:?} has no {side} at all; the maximum-likelihood ability diverges (supply a damping pseudo-count)")]
    UndominatedSystem { system: String, side: &'static str },

    #[error("no decisive votes")]
    NoDecisiveVotes,

    #[error("no per-prompt vote groups available for prompt-level resampling")]
    NoPromptGroups,

    #[error("insufficient votes: need at least {need}, got {got}")]
    InsufficientVotes { need: usize, got: usize },

    #[error("insufficient matchups: need at least {need}, got {got}")]
    InsufficientMatchups { need: usize, got: usize },

    #[error("empty response set")]
    EmptyResponseSet,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot read {path}: {msg}")]
    ReadFailed { path: String, msg: String },

    #[error("cannot write {path}: {msg}")]
    WriteFailed { path: String, msg: String },
}
