use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("part {part} exceeds rank {rank} of bundle {bundle}")]
    RankViolation { bundle: usize, part: u32, rank: u32 },
    #[error("projective bundle of an empty bundle")]
    EmptySpec,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid partition list: {0}")]
    InvalidIndex(String),
    #[error("no stabilization up to truncation order {0}")]
    NoStabilization(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no determinacy bound up to order {0}")]
    NoBound(u32),
    #[error("unknown singularity label `{0}`")]
    UnknownLabel(String),
    #[error("no singleton table entry for `{0}`")]
    MissingSingleton(String),
    #[error("invalid Caporaso-Harris state: {0}")]
    InvalidState(String),
    #[error("sample at d = {0} disagrees with the interpolating polynomial")]
    InconsistentSamples(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("entry {key} is not homogeneous of weight {weight}")]
    NotHomogeneous { key: String, weight: u32 },
    #[error("the entry for the empty multiset pair must vanish")]
    NonzeroEmptyEntry,
    #[error("size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: u32, cap: u32 },
}

pub type Result<T> = core::result::Result<T, Error>;
