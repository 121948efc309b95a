use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid triple ({p},{q},{r}): every entry must be a positive integer")]
    InvalidTriple { p: u32, q: u32, r: u32 },

    #[error("divisor classes belong to distinct configurations: {left} vs {right}")]
    DistinctConfiguration { left: String, right: String },

    #[error("matrix shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("matrix is not invertible over the integers")]
    NotInvertible,

    #[error("exceptional Chern characters do not form a basis of the K-lattice (internal bug)")]
    BasisDegenerate,

    #[error("relation {index} is not homogeneous: {reason}")]
    InconsistentGrading { index: usize, reason: String },

    #[error("arrow {label} rejected: {reason}")]
    InvalidArrow { label: String, reason: String },

    #[error("mutation position {position} out of range for a collection of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("invalid mutation word token {token:?}: expected a nonzero signed slot")]
    InvalidWord { token: String },

    #[error("entry {entry} < 2: not a cycle of smooth rational curves")]
    NotACycleOfRationalCurves { entry: i64 },

    #[error("the all-(-2) cycle of length {len} is the simple-elliptic boundary case, not a cusp")]
    NotHyperbolic { len: usize },

    #[error("a cycle needs at least one component")]
    EmptyCycle,

    #[error("unknown object label {0}")]
    UnknownObject(String),
}

impl Error {
    /// Stable variant name, used for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidTriple { .. } => "InvalidTriple",
            Error::DistinctConfiguration { .. } => "DistinctConfiguration",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::BasisDegenerate => "BasisDegenerate",
            Error::InconsistentGrading { .. } => "InconsistentGrading",
            Error::InvalidArrow { .. } => "InvalidArrow",
            Error::PositionOutOfRange { .. } => "PositionOutOfRange",
            Error::InvalidWord { .. } => "InvalidWord",
            Error::NotACycleOfRationalCurves { .. } => "NotACycleOfRationalCurves",
            Error::NotHyperbolic { .. } => "NotHyperbolic",
            Error::EmptyCycle => "EmptyCycle",
            Error::UnknownObject(_) => "UnknownObject",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
