use thiserror::Error;

/// Errors surfaced by the core engine.
///
/// `CapExceeded` and `InternalConsistency` are kept distinct because callers
/// map them to dedicated process exit codes (3 and 4 respectively).
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("element is not a member of the group")]
    NotInGroup,
    #[error("pair does not generate the group")]
    NotGenerating,
    #[error("generator images do not extend to a homomorphism")]
    NotHomomorphism,
    #[error("generator images do not generate the target group")]
    NotSurjective,
    #[error("supplied automorphism generators do not normalize the group")]
    NotNormalizing,
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
