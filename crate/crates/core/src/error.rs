use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the solvers and their building blocks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand sizes do not conform.
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    /// A vector or matrix with no entries.
    Empty,
    /// A NaN or infinite entry was supplied at the given flat index.
    NonFinite { index: usize },
    /// A scalar parameter is out of its admissible range.
    InvalidParameter(&'static str),
    /// Every rule activation underflowed; the input lies outside the
    /// support of all rules. `sample` is set when raised during training.
    DegenerateActivation { sample: Option<usize> },
    /// The search direction lies (numerically) in the null space of `A`.
    NullSpaceDirection,
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// A zero diagonal entry stops a stationary sweep.
    ZeroDiagonal { index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                op,
                expected,
                found,
            } => write!(
                f,
                "dimension mismatch in {op}: expected {expected}, found {found}"
            ),
            Error::Empty => f.write_str("empty vector or matrix"),
            Error::NonFinite { index } => write!(f, "non-finite entry at index {index}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateActivation { sample: None } => {
                f.write_str("all rule activations underflowed")
            }
            Error::DegenerateActivation { sample: Some(i) } => {
                write!(f, "all rule activations underflowed for sample {i}")
            }
            Error::NullSpaceDirection => {
                f.write_str("search direction lies in the null space of A")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "square matrix required, got {rows}x{cols}")
            }
            Error::ZeroDiagonal { index } => write!(f, "zero diagonal entry at row {index}"),
        }
    }
}

impl core::error::Error for Error {}
