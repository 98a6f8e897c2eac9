//! Exact scalars, Laurent polynomials in `q`, and truncated power series.

mod laurent;
mod rat;
mod series;

pub use laurent::LaurentPoly;
pub use rat::{format_rat, parse_rat, rat, BigRat};
pub use series::{PowerSeries, DEFAULT_TRUNCATION};

/// Double-precision complex value used for floating evaluation.
pub type ComplexVal = num_complex::Complex64;
