use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("generator {index} is not homogeneous: {text}")]
    NonHomogeneousGenerator { index: usize, text: String },

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("characteristic {p} divides degree {degree}; the projective Jacobian criterion does not apply")]
    CharDividesDegree { p: u64, degree: u32 },

    #[error("degree {degree} is out of range: {reason}")]
    DegreeOutOfRange { degree: u32, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no stabilization detected: {0}")]
    NoStabilization(String),

    #[error("not a curve: Hilbert polynomial has degree {0}")]
    NotACurve(usize),

    #[error("leading coefficient {found} of the differentials polynomial does not match curve degree {expected}")]
    LeadingMismatch { expected: String, found: String },

    #[error("plane curve identity violated: expected {expected}, computed {computed}")]
    TheoremViolation { expected: String, computed: String },

    #[error("invalid input document: {0}")]
    Input(String),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CharDividesDegree { .. }
            | Error::DegreeOutOfRange { .. }
            | Error::Domain(_)
            | Error::NoStabilization(_)
            | Error::NotACurve(_)
            | Error::LeadingMismatch { .. } => 3,
            Error::TheoremViolation { .. } => 1,
            _ => 2,
        }
    }
}
