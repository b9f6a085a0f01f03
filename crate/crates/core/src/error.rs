use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("structure must have at least one element")]
    Empty,
    #[error("size {got} is below the minimum {min}")]
    TooSmall { got: usize, min: usize },
    #[error("map is not a group automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("malformed group: {0}")]
    MalformedGroup(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("map is not a quandle homomorphism: {0}")]
    InvalidHom(String),
    #[error("{what} exceeded the cap of {cap}")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("elements belong to different racks")]
    RackMismatch,
    #[error("{0} is not a unit")]
    NonUnit(String),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sublattice is not contained in the superlattice")]
    NotContained,
    #[error("subset is not closed under the rack operation")]
    NotClosed,
    #[error("ideal carries no two-sided closure certificate")]
    UncertifiedIdeal,
    #[error("lattice is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("e + ({0})w is not invertible: alpha = -1/n")]
    SingularUnit(String),
    #[error("augmentation {0} is not a unit")]
    NonUnitAugmentation(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
