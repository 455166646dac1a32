use thiserror::Error;

/// Errors raised across the crate. Pure-math operations return these instead
/// of panicking so the CLI can map them onto exit codes.
#[derive(Debug, Error)]
pub enum TlError {
    #[error("strand count must be at least 1")]
    ZeroStrands,

    #[error("generator index {index} out of range 1..={max}")]
    BadGenerator { index: usize, max: usize },

    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("pairing is not planar")]
    NotPlanar,

    #[error("invalid link state: {0}")]
    InvalidState(String),

    #[error("cup count mismatch: state has {got} cups, expected {expected}")]
    CupCountMismatch { got: usize, expected: usize },

    #[error("cup count {p} out of range for n = {n}")]
    BadCupCount { n: usize, p: usize },

    #[error("inclusion target {target} is below source length {from}")]
    BadInclusion { from: usize, target: usize },

    #[error("enumeration for n = {n} exceeds the configured cap {cap} (set TL_MAX_N to raise)")]
    ResourceLimit { n: usize, cap: usize },

    #[error("betti list has length {got}, expected floor(n/2) = {expected}")]
    BadProfile { got: usize, expected: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("representation violates the Temperley-Lieb relations: {0}")]
    RelationsViolated(String),

    #[error("space failed verification: {0}")]
    SpaceNotVerified(String),

    #[error("full intersection Q is not just the basepoint; quotient by Q first")]
    NontrivialQ,

    #[error("space has no basepoint: {0}")]
    NoBasepoint(String),

    #[error("malformed space: {0}")]
    MalformedSpace(String),

    #[error("quotient by Q is not simplicial here: simplex {0:?} has two vertices in Q")]
    QuotientNotSimplicial(Vec<String>),

    #[error("index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("torus model needs at least n-1 = {need} circle factors, got c = {got}")]
    TorusTooSmall { need: usize, got: usize },

    #[error("chain is malformed: {0}")]
    BadChain(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, TlError>;
