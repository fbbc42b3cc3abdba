use thiserror::Error;

use crate::poly::Polynomial;

/// Errors raised by the exact toolkit.
///
/// Variable and coordinate indices carried by errors are 0-based, like the
/// rest of the library API. The text front end converts them to the 1-based
/// `x1, x2, ...` notation when it renders messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomialInput,

    #[error("polynomial is not divisible by x{}", variable + 1)]
    NotDivisible { variable: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension {size} exceeds the configured bound {limit}")]
    DimensionTooLarge { size: usize, limit: usize },

    #[error("shape mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("coordinate {} is not of the form x{} + cubic form (stray terms: {stray})", coordinate + 1, coordinate + 1)]
    NotYagzhevForm { coordinate: usize, stray: Polynomial },

    #[error("potential is not a homogeneous quartic")]
    NotQuartic,

    #[error("jacobian is not symmetric: dP/dx{} - H{} = {residue}", coordinate + 1, coordinate + 1)]
    NotSymmetric { coordinate: usize, residue: Polynomial },

    #[error("coordinate {} does not meet the replay precondition: {reason}", coordinate + 1)]
    PreconditionNotMet { coordinate: usize, reason: String },

    #[error("arity {arity} is too small (need at least {minimum})")]
    ArityTooSmall { arity: usize, minimum: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("map is not square: {coordinates} coordinates in {arity} variables")]
    NotSquareMap { coordinates: usize, arity: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
