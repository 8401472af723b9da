use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("relator violated: {0}")]
    RelatorViolated(String),
    #[error("relations not preserved: {0}")]
    RelationsNotPreserved(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not exact at degree {degree}: {detail}")]
    NotExact { degree: usize, detail: String },
    #[error("resolution too short: need degree {needed}, have {available}")]
    ResolutionTooShort { needed: usize, available: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("not a Q/Z-cocycle")]
    NotQzCocycle,
    #[error("module has torsion: {0}")]
    Torsion(String),
    #[error("subgroup mismatch: {0}")]
    SubgroupMismatch(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("constant outside model: {0}")]
    ConstantOutsideModel(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("dataset inconsistency: {0}")]
    Dataset(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
