use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The divisor does not divide the dividend; upstream this means an
    /// identity that should hold exactly does not.
    #[error("non-exact polynomial division: {dividend} / {divisor}")]
    NonExactDivision { dividend: String, divisor: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("evaluation at q = 0 of a polynomial with negative exponent {min_exponent}")]
    ZeroAtNegativeExponent { min_exponent: i64 },

    #[error("power series with zero constant term is not invertible")]
    NonInvertibleSeries,

    #[error("index ({n}, {k}) is outside the triangle")]
    IndexOutOfTriangle { n: i64, k: i64 },

    #[error("coefficient index {index} exceeds series truncation order {order}")]
    TruncationExceeded { index: usize, order: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
