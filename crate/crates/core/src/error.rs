use thiserror::Error;

/// Errors raised by ring construction, root-system queries and the group
/// algorithms built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor `{0}`")]
    InvalidDescriptor(String),
    #[error("characteristic 2 is not supported: 2 must be invertible")]
    EvenCharacteristic,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ring has more than 2^64 elements")]
    RingTooLarge,
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("extension rings are not known to be local")]
    LocalityNotGuaranteed,
    #[error("element does not belong to ring `{0}`")]
    ForeignElement(String),
    #[error("unsupported root system {0}")]
    UnsupportedSystem(String),
    #[error("{0} is not a root of the system")]
    NotARoot(String),
    #[error("permutation {0:?} is not a symmetry of the Dynkin diagram")]
    NotADiagramSymmetry(Vec<usize>),
    #[error("marked sequence property violated: {0}")]
    PropertyViolation(String),
    #[error("designated positions do not cover the parameters: {0}")]
    Coverage(String),
    #[error("matrix is not in the big-cell normal form: {0}")]
    NotInNormalForm(String),
    #[error("matrix is not invertible over the ring")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("malformed JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
