use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("bad rational literal {0:?}")]
    BadRational(String),

    #[error("precondition failed: {what}")]
    PreconditionFailed {
        what: String,
        report: Box<VerificationReport>,
    },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("not a chain homotopy: {0}")]
    NotChainHomotopy(String),

    #[error("2-term algebra is not skeletal (d != 0)")]
    NotSkeletal,

    #[error("2-term algebra is not strict (l5 != 0)")]
    NotStrict,

    #[error("invalid quadruple: {}", .0.summary())]
    InvalidQuadruple(Box<VerificationReport>),

    #[error("invalid crossed module: {}", .0.summary())]
    InvalidCrossedModule(Box<VerificationReport>),

    #[error("invalid symplectic structure: {}", .0.summary())]
    InvalidSymplectic(Box<VerificationReport>),

    #[error("unsupported cochain degree {0} (supported: 1..=3)")]
    UnsupportedDegree(usize),

    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),

    #[error("term lands in degree {0}, outside the 2-term wedge grading")]
    DegreeOverflow(usize),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, report: VerificationReport) -> Self {
        Error::PreconditionFailed {
            what: what.into(),
            report: Box::new(report),
        }
    }

    pub(crate) fn dims(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }
}
