use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed quiver or relation: {0}")]
    Quiver(String),
    #[error("not finite-dimensional / not admissible: no power of the arrow ideal up to length {0} lies in the relation ideal")]
    NotAdmissible(usize),
    #[error("invalid module: {}", .0.join("; "))]
    InvalidModule(Vec<String>),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("module side mismatch: {0}")]
    SideMismatch(String),
    #[error("radical via the trace form needs characteristic 0 or p > {dim} (got p = {p}); present the algebra by a quiver instead")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("module is not injective over the endomorphism algebra: {0}")]
    NotInjective(String),
    #[error("no almost split sequence ends in a projective module")]
    ProjectiveEnd,
    #[error("module is decomposable: {0}")]
    Decomposable(String),
    #[error("decomposition undecided after {0} random trials")]
    Undecided(usize),
    #[error("variance mismatch: {0}")]
    Variance(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
}
