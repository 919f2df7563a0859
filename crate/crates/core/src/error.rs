use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix rows have different lengths")]
    NotRectangular,

    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("point outside the cone chart: the lifting vanishes there")]
    ZeroLifting,

    #[error("degenerate map: coordinates are linearly dependent over Q")]
    DegenerateMap,

    #[error("degenerate curve: the Wronskian vanishes identically")]
    DegenerateCurve,

    #[error("expected a curve (one variable), got {0} variables")]
    NotACurve(usize),

    #[error("equation does not hold identically on the chart")]
    NotIdentical,

    #[error("jet matrix {rows}x{cols} exceeds the 12x12 minor enumeration guard")]
    SizeGuard { rows: usize, cols: usize },

    #[error("class with zero constant term is not invertible")]
    NotInvertible,

    #[error("map is not flagged as a linear P^(n-1)-bundle chart")]
    NotBundleChart,

    #[error("hypothesis out of range: {0}")]
    HypothesisOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
