use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order {0}: expected a prime power in 2..=9")]
    UnsupportedOrder(usize),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no projective representative")]
    ZeroVector,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("matroid has rank zero")]
    RankZero,
    #[error("contraction set is dependent")]
    DependentContractionSet,
    #[error("matroids are carried over different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(usize, usize),
    #[error("graph is not simple or not connected: {0}")]
    NonSimpleGraph(String),
    #[error("dual is not simple: {0}")]
    DualNotSimple(String),
    #[error("uniform search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("set is not a flat")]
    NotAFlat,
    #[error("glue flat does not restrict to a projective geometry")]
    NotProjectiveGuts,
    #[error("glue flat is modular on neither side")]
    NotModularGuts,
    #[error("incompatible glue pairing: {0}")]
    IncompatiblePairing(String),
    #[error("generalized parallel connection postcondition failed: {0}")]
    GutsLeak(String),
    #[error("point already present: {0}")]
    PointCollision(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no valid split for a non-terminal piece: {0}")]
    NoValidSplit(String),
    #[error("catalog universe not feasible: rank {r} over GF({q})")]
    InfeasibleUniverse { r: usize, q: usize },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid point at line {line}: {message}")]
    InvalidPoint { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
