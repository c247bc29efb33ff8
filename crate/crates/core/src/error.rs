use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("codimension {codim} is outside 0..={dim}")]
    CodimOutOfRange { codim: usize, dim: usize },
    #[error("a codimension-0 term cannot carry a fiber component")]
    FiberTermInCodimZero,
    #[error("classes live on scrolls of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("class is not invertible: its constant term is not a unit")]
    NotUnit,
    #[error("class is not homogeneous")]
    NotHomogeneous,
    #[error("dimension must be positive")]
    InvalidDimension,
    #[error("jet order must be positive")]
    InvalidJetOrder,
    #[error("invalid scroll parameters: {0}")]
    InvalidParams(String),
    #[error("invalid scroll: {0}")]
    InvalidScroll(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("jet order {k} is too large: {k}*{n} exceeds the ambient dimension {ambient}")]
    JetOrderTooLarge { k: u32, n: usize, ambient: usize },
    #[error("determinant divisor needs N = kn, got N = {ambient}, kn = {kn}")]
    NotSquare { ambient: usize, kn: usize },
    #[error("invalid curve basis: {0}")]
    InvalidBasis(String),
    #[error("charts disagree: {0}")]
    ChartDisagreement(String),
    #[error("determinant is not linear in the fiber coordinates: {0}")]
    NonlinearDeterminant(String),
    #[error("jet order {given} does not match the derived order {derived}")]
    InconsistentJetOrder { given: u32, derived: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}
