use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomials or ideals belong to different rings")]
    RingMismatch,

    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),

    #[error("element `{0}` has degree 0; parameters must lie in the irrelevant ideal")]
    NotInMaximalIdeal(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("quotient by the zero ideal")]
    ZeroIdeal,

    #[error("the defining ideal is the unit ideal (zero module)")]
    ZeroModule,

    #[error("ideal has a non-monomial generator `{0}`")]
    NotMonomial(String),

    #[error("sequence length {r} is invalid here (module dimension {d}): {msg}")]
    LengthMismatch { r: usize, d: i64, msg: &'static str },

    #[error("too many variables for exhaustive dimension search ({0} > {max})", max = crate::groebner::MAX_DIM_VARS)]
    TooManyVariables(usize),

    #[error("randomized construction failed after {retries} attempts: {what}")]
    RetriesExhausted { what: String, retries: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
