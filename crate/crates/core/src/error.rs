use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a real scalar, got {0}")]
    NotReal(String),
    #[error("element is not hermitian: {0}")]
    NotHermitian(String),
    #[error("coefficients must be rational: {0}")]
    IrrationalCoefficients(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("map does not define a field automorphism: {0}")]
    NotAutomorphism(String),
    #[error("involution axiom `{axiom}` fails: {detail}")]
    InvalidInvolution { axiom: String, detail: String },
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("degree {got} exceeds the supported maximum {max}")]
    DegreeTooLarge { got: usize, max: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
