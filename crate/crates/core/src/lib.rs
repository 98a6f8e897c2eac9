//! Exact q-deformed Stirling numbers of both kinds and their fermionic,
//! bosonic and classical specializations.
//!
//! Every q-dependent quantity is a [`LaurentPoly`] with exact rational
//! coefficients, so identities between Stirling tables, closed forms and
//! connection coefficients are checked by structural equality.
//!
//! - [`exact_arith`]: rationals, Laurent polynomials, truncated power series
//! - [`qcore`]: q-integers, q-factorials, Gaussian binomials
//! - [`stirling_q`]: q-Stirling triangles, closed forms, q-Bell numbers
//! - [`fermionic`]: the q = -1 triangles and their structural theorems
//! - [`analytic`]: the interpolation function, Bernoulli numbers of higher
//!   order, Eulerian numbers and the zeta series
//! - [`cli`]: the `qstirling` command-line front end

pub mod analytic;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod fermionic;
pub mod qcore;
pub mod report;
pub mod stirling_q;

pub use error::{Error, Result};
pub use exact_arith::{BigRat, ComplexVal, LaurentPoly, PowerSeries};
pub use report::VerificationReport;
