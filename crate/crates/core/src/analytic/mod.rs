//! Floating and exact analytic companions of the q-Stirling tables: the
//! interpolation function `Y_S(z,k,q)`, classical oracles, Bernoulli numbers
//! of higher order, the zeta series over first-kind Stirling numbers, and
//! the closed form of `beta_m(h,k,q)`.

mod bernoulli;
mod beta;
mod classical;
mod interp;
mod zeta;

pub use bernoulli::{
    bernoulli_higher, eulerian_bernoulli_check, eulerian_bernoulli_report, gessel_check,
    gessel_report, BernoulliOracle, EulerianBernoulliEntry, HigherBernoulli,
};
pub use beta::beta_q;
pub use classical::{
    binomial, classical_bell, classical_stirling1, classical_stirling1_table, classical_stirling2,
    classical_stirling2_table, eulerian, eulerian_stirling_check, eulerian_stirling_report,
    factorial, stirling2_via_eulerian,
};
pub use interp::{bell_q_via_ys, interpolation_report, ys_eval, ys_eval_q1, InterpResult};
pub use zeta::{
    zeta_partial_sum_exact, zeta_terms, zeta_via_stirling1, ZetaReport, EXACT_TERMS_LIMIT, ZETA_2,
    ZETA_3,
};
