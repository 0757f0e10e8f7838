use thiserror::Error;

/// Errors raised by spec construction, rank queries and divisor computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("module index {index} out of range for {len} modules")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invariant `{invariant}` violated: {witness}")]
    InvalidSpec {
        invariant: &'static str,
        witness: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Virasoro parameters (p, q) = ({p}, {q}): {reason}")]
    InvalidVirasoro { p: i64, q: i64, reason: &'static str },

    #[error("affine sl2 level must be at least 1, got {0}")]
    InvalidLevel(i64),

    #[error("not an abelian group table: {0}")]
    NotAGroup(String),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("step insertion must be nonempty")]
    EmptyStep,

    #[error("denominator vanishes at z = 0; no power series expansion")]
    SeriesPole,

    #[error("continued fraction needs at least one layer")]
    ZeroLayers,

    #[error("unstable moduli: 2g - 2 + n = {value} <= 0 for (g, n) = ({g}, {n})")]
    Unstable { g: usize, n: usize, value: i64 },

    #[error("operation requires {expected}, got (g, n) = ({g}, {n})")]
    WrongModuli {
        expected: &'static str,
        g: usize,
        n: usize,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown VOA selector `{0}`")]
    UnknownSelector(String),

    #[error("state-sum decompositions disagree: caterpillar gives {caterpillar}, balanced tree gives {balanced}")]
    OracleMismatch {
        caterpillar: String,
        balanced: String,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Whether this error belongs to the computation domain (as opposed to bad input).
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::Unstable { .. }
                | Error::WrongModuli { .. }
                | Error::SeriesPole
                | Error::ZeroLayers
                | Error::EmptyStep
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
