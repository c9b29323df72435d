use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("incidence has {actual} {what}, expected {expected}")]
    ShapeMismatch { what: &'static str, expected: usize, actual: usize },

    #[error("{kind} index {index} out of range (len {len})")]
    IndexOutOfRange { kind: &'static str, index: usize, len: usize },

    #[error("context is not clarified: {0}")]
    NotClarified(String),

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("invalid taxonomy: {0}")]
    InvalidTaxonomy(String),

    #[error("empty lemma in token `{0}`")]
    EmptyLemma(String),

    #[error("corpus has no sentences")]
    EmptyCorpus,

    #[error("sentence {0} has no tokens")]
    EmptySentence(usize),

    #[error("{name} must be at least 1")]
    NonPositive { name: &'static str },

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("vector dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("no terms to work with")]
    NoTerms,

    #[error("only {nonzero} non-zero sentence vectors for k = {k}; use a smaller k")]
    TooFewVectors { nonzero: usize, k: usize },

    #[error("sentence {index} outside 1..={n}")]
    SentenceOutOfRange { index: usize, n: usize },

    #[error("empty formal context ({pairs} pairs, none frequent at threshold {min_freq})")]
    EmptyContext { pairs: usize, min_freq: usize },

    #[error("empty cluster")]
    EmptyCluster,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
