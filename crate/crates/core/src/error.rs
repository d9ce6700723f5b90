use thiserror::Error;

/// Invariants of an admissible based graph, named in parse diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Determinism,
    CoDeterminism,
    Connectivity,
    Trim,
    BaseVertex,
}

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Invariant::Determinism => "determinism",
            Invariant::CoDeterminism => "co-determinism",
            Invariant::Connectivity => "connectivity",
            Invariant::Trim => "trim (no leaf other than the base)",
            Invariant::BaseVertex => "base vertex must be 1",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size {0} outside 1..=26")]
    InvalidAlphabet(usize),
    #[error("operation requires at least 2 generators, got r = {0}")]
    UnsupportedAlphabet(usize),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("word is not freely reduced at position {position}")]
    NotReduced { position: usize },
    #[error("alphabet mismatch: r = {left} vs r = {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("graph violates {invariant}: {detail}")]
    Inadmissible { invariant: Invariant, detail: String },
    #[error("graph file: {0}")]
    GraphFormat(#[from] serde_json::Error),
    #[error("count cache covers n <= {available}, need {needed}")]
    CacheTooSmall { needed: usize, available: usize },
    #[error("sampling failed after {attempts} consecutive rejections")]
    SamplingFailed { attempts: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown experiment '{0}'")]
    UnknownExperiment(String),
    #[error("{experiment} at n = {n}, trial {trial}: {source}")]
    Trial {
        experiment: String,
        n: usize,
        trial: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("Hanna Neumann inequality violated: {0}")]
    InequalityViolated(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
