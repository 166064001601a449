use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different rings (variable count or coefficient field).
    RingMismatch,
    /// A point or exponent vector has the wrong length.
    DimensionMismatch { expected: usize, found: usize },
    /// Polynomial text could not be parsed.
    Syntax { position: usize, message: String },
    UnknownVariable(String),
    /// A literal coefficient does not live in the ring's coefficient field.
    CoefficientNotInField(String),
    /// A configured cap (terms, S-pair reductions, products) was hit.
    Budget { what: &'static str, limit: u64 },
    /// Exponent arithmetic left the `u64` range.
    ExponentOverflow,
    NotPrime(u64),
    /// A precondition on the input was violated.
    Precondition(String),
    /// The input is outside the catalogue of families with a known formula.
    UnsupportedFamily(String),
    /// The zero ideal (or an empty generator list) was given.
    ZeroIdeal,
    /// The monomial ideal is not primary to the maximal ideal.
    NotMPrimary,
    /// The linear program has no feasible point.
    Infeasible,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Syntax { position, message } => {
                write!(f, "syntax error at position {position}: {message}")
            }
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::CoefficientNotInField(c) => {
                write!(f, "coefficient {c} is not in the coefficient field")
            }
            Error::Budget { what, limit } => write!(f, "budget exceeded: {what} > {limit}"),
            Error::ExponentOverflow => write!(f, "exponent overflow"),
            Error::NotPrime(p) => write!(f, "{p} is not a prime"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::UnsupportedFamily(m) => write!(f, "unsupported family: {m}"),
            Error::ZeroIdeal => write!(f, "the zero ideal is not allowed here"),
            Error::NotMPrimary => write!(f, "ideal is not primary to the maximal ideal"),
            Error::Infeasible => write!(f, "linear program is infeasible"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
