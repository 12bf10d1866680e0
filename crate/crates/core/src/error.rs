use thiserror::Error;

/// Errors raised by the flip-graph library.
///
/// Variants split into two families: input validation problems (bad MV
/// strings, malformed patterns, exceeded limits) and internal consistency
/// failures (formula/brute-force disagreement, a search that must succeed
/// coming up empty). The CLI maps them to exit codes 1 and 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OfgError {
    #[error("invalid MV string {input:?}: {reason}")]
    InvalidMvString { input: String, reason: String },

    #[error("degree {0} is not supported (must be even, between 2 and 64)")]
    UnsupportedDegree(usize),

    #[error("length mismatch: {left} creases vs {right} creases")]
    LengthMismatch { left: usize, right: usize },

    #[error("{index} is out of range for degree {degree} (indices are 1-based)")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("MV assignment {0} is not valid for this crease pattern")]
    InvalidAssignment(String),

    #[error("invalid angle {input:?}: {reason}")]
    InvalidAngle { input: String, reason: String },

    #[error("invalid crease pattern: {0}")]
    InvalidPattern(String),

    #[error("operation requires the equal-angle pattern, got a non-uniform pattern")]
    NotUniform,

    #[error("operation requires a non-uniform pattern, got the equal-angle pattern")]
    UniformPattern,

    #[error("{what} = {value} exceeds the enumeration limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("malformed document: {0}")]
    Format(String),

    #[error("odd disagreement set of size {0}; inputs cannot both be valid")]
    OddDifference(usize),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl OfgError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            OfgError::InvalidMvString { .. } => "E_MV_STRING",
            OfgError::UnsupportedDegree(_) => "E_DEGREE",
            OfgError::LengthMismatch { .. } => "E_LENGTH",
            OfgError::IndexOutOfRange { .. } => "E_INDEX",
            OfgError::InvalidAssignment(_) => "E_INVALID_MV",
            OfgError::InvalidAngle { .. } => "E_ANGLE",
            OfgError::InvalidPattern(_) => "E_PATTERN",
            OfgError::NotUniform => "E_NOT_UNIFORM",
            OfgError::UniformPattern => "E_UNIFORM",
            OfgError::LimitExceeded { .. } => "E_LIMIT",
            OfgError::Format(_) => "E_FORMAT",
            OfgError::OddDifference(_) => "E_ODD_DIFF",
            OfgError::Consistency(_) => "E_CONSISTENCY",
        }
    }

    /// True for failures that indicate a bug or a broken invariant rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, OfgError::Consistency(_) | OfgError::OddDifference(_))
    }

    /// Process exit status used by the CLI.
    pub fn exit_status(&self) -> i32 {
        if self.is_internal() {
            2
        } else {
            1
        }
    }
}

pub type Result<T, E = OfgError> = std::result::Result<T, E>;
