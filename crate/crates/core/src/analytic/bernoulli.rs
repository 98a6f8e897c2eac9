use num_traits::Zero;

use crate::error::Result;
use crate::exact_arith::{format_rat, BigRat, PowerSeries, DEFAULT_TRUNCATION};
use crate::report::VerificationReport;

use super::classical::{binomial, classical_stirling2, eulerian, factorial};

/// `B_index^{(order)}` together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherBernoulli {
    pub order: i64,
    pub index: usize,
    pub value: BigRat,
}

/// Bernoulli numbers of higher order from the truncated series
/// `sum_j B_j^{(n)} t^j / j! = (t/(e^t - 1))^n`; a negative order uses
/// `((e^t - 1)/t)^{|n|}`.
#[derive(Clone, Debug)]
pub struct BernoulliOracle {
    expm1_over_t: PowerSeries,
    reciprocal: PowerSeries,
}

impl Default for BernoulliOracle {
    fn default() -> Self {
        Self::new(DEFAULT_TRUNCATION)
    }
}

impl BernoulliOracle {
    pub fn new(truncation: usize) -> Self {
        let expm1_over_t = PowerSeries::expm1_over_t(truncation);
        let reciprocal = expm1_over_t
            .inverse()
            .expect("(e^t - 1)/t has constant term 1");
        BernoulliOracle {
            expm1_over_t,
            reciprocal,
        }
    }

    pub fn truncation(&self) -> usize {
        self.expm1_over_t.order()
    }

    pub fn value(&self, order: i64, index: usize) -> Result<HigherBernoulli> {
        let base = if order >= 0 {
            &self.reciprocal
        } else {
            &self.expm1_over_t
        };
        let series = base.pow(order.unsigned_abs());
        let c = series.coeff(index)?;
        let value = c * BigRat::from_integer(factorial(index as u32));
        Ok(HigherBernoulli {
            order,
            index,
            value,
        })
    }

    /// `S(n+k,n) - C(n+k,k) B_k^{(-n)}`.
    pub fn gessel_residual(&self, n: u32, k: u32) -> Result<BigRat> {
        let b = self.value(-(n as i64), k as usize)?.value;
        let s = BigRat::from_integer(classical_stirling2(n + k, n));
        Ok(s - BigRat::from_integer(binomial(n + k, k)) * b)
    }

    pub fn eulerian_bernoulli(&self, n: u32, k: u32) -> Result<EulerianBernoulliEntry> {
        let oracle = self.value(-(n as i64), k as usize)?.value;
        let mut sum = num_bigint::BigInt::zero();
        for j in 0..n + k {
            sum += eulerian(n + k, j)? * binomial(j, k);
        }
        let sum = BigRat::from_integer(sum);
        let c = BigRat::from_integer(binomial(n + k, k));
        let nf = BigRat::from_integer(factorial(n));
        let printed = &c / &nf * &sum;
        let consistent = &sum / (c * nf);
        Ok(EulerianBernoulliEntry {
            n,
            k,
            consistent_matches: consistent == oracle,
            printed_matches: printed == oracle,
            oracle,
            consistent,
            printed,
        })
    }
}

/// `B_index^{(order)}` at the default truncation.
pub fn bernoulli_higher(order: i64, index: usize) -> Result<BigRat> {
    Ok(BernoulliOracle::default().value(order, index)?.value)
}

pub fn gessel_check(n: u32, k: u32) -> Result<BigRat> {
    BernoulliOracle::default().gessel_residual(n, k)
}

/// `B_k^{(-n)}` from the Eulerian numbers of order `n+k`, in two readings:
///
/// - consistent: `(1/(C(n+k,k) n!)) sum_j E(n+k,j) C(j,k)`, obtained by
///   combining `S(n+k,n) = C(n+k,k) B_k^{(-n)}` with the Eulerian expansion
///   of `S(n,m)`;
/// - printed: `(C(n+k,k)/n!) sum_j E(n+k,j) C(j,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianBernoulliEntry {
    pub n: u32,
    pub k: u32,
    pub oracle: BigRat,
    pub consistent: BigRat,
    pub printed: BigRat,
    pub consistent_matches: bool,
    pub printed_matches: bool,
}

pub fn eulerian_bernoulli_check(n: u32, k: u32) -> Result<EulerianBernoulliEntry> {
    BernoulliOracle::default().eulerian_bernoulli(n, k)
}

/// Gessel's relation for `1 <= n <= max_n`, `0 <= k <= max_n`, and
/// `B_1^{(-n)} = n/2`.
pub fn gessel_report(oracle: &BernoulliOracle, max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("gessel").with_range("n", max_n as i64);
    let zero = BigRat::zero();
    for n in 1..=max_n {
        for k in 0..=max_n {
            let loc = format!("n={n}, k={k}");
            match oracle.gessel_residual(n, k) {
                Ok(r) => {
                    report.check(loc, &zero, &r);
                }
                Err(e) => report.fail(loc, &zero, e),
            }
        }
        let loc = format!("B_1^(-{n})");
        let half = BigRat::new(n.into(), 2.into());
        match oracle.value(-(n as i64), 1) {
            Ok(b) => {
                report.check(loc, &half, &b.value);
            }
            Err(e) => report.fail(loc, &half, e),
        }
    }
    report
}

/// The consistent reading is asserted against the series oracle; the
/// printed reading is only described in the notes.
pub fn eulerian_bernoulli_report(oracle: &BernoulliOracle, max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("eulerian-bernoulli").with_range("n", max_n as i64);
    let mut printed_hits = Vec::new();
    let mut printed_misses = Vec::new();
    for n in 1..=max_n {
        for k in 0..=max_n {
            let loc = format!("n={n}, k={k}");
            match oracle.eulerian_bernoulli(n, k) {
                Ok(e) => {
                    report.check(loc, &e.oracle, &e.consistent);
                    let desc = format!(
                        "(n={n}, k={k}): printed {} vs oracle {}",
                        format_rat(&e.printed),
                        format_rat(&e.oracle)
                    );
                    if e.printed_matches {
                        printed_hits.push(format!("(n={n}, k={k})"));
                    } else {
                        printed_misses.push(desc);
                    }
                }
                Err(e) => report.fail(loc, "value", e),
            }
        }
    }
    report.note(format!(
        "errata: the printed form C(n+k,k)/n! * sum E(n+k,j) C(j,k) disagrees with B_k^(-n) on {} pairs and agrees on {} pairs ({})",
        printed_misses.len(),
        printed_hits.len(),
        printed_hits.join(", ")
    ));
    for m in printed_misses {
        report.note(format!("errata {m}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact_arith::rat;

    #[test]
    fn values() {
        assert_eq!(bernoulli_higher(-2, 1).unwrap(), rat(1, 1));
        for order in -5..=5 {
            assert_eq!(bernoulli_higher(order, 0).unwrap(), rat(1, 1));
        }
        assert_eq!(bernoulli_higher(1, 1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli_higher(1, 2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_higher(1, 12).unwrap(), rat(-691, 2730));
        // B_2^{(2)} = 5/6
        assert_eq!(bernoulli_higher(2, 2).unwrap(), rat(5, 6));
        assert_eq!(bernoulli_higher(0, 3).unwrap(), rat(0, 1));
        assert_eq!(
            bernoulli_higher(1, 24),
            Err(Error::TruncationExceeded {
                index: 24,
                order: 24
            })
        );
        assert_eq!(
            BernoulliOracle::new(40).value(1, 30).unwrap().value,
            rat(8615841276005, 14322)
        );
    }

    #[test]
    fn half_order_rule() {
        for n in 1..=20 {
            assert_eq!(bernoulli_higher(-n, 1).unwrap(), rat(n, 2));
        }
    }

    #[test]
    fn gessel_examples() {
        assert_eq!(gessel_check(2, 1).unwrap(), rat(0, 1));
        for n in 1..=6 {
            assert_eq!(gessel_check(n, 0).unwrap(), rat(0, 1));
        }
        assert_eq!(gessel_check(3, 2).unwrap(), rat(0, 1));
    }

    #[test]
    fn eulerian_bernoulli_readings() {
        let e = eulerian_bernoulli_check(2, 1).unwrap();
        assert_eq!(e.consistent, rat(1, 1));
        assert_eq!(e.printed, rat(9, 1));
        assert!(e.consistent_matches && !e.printed_matches);
        let e = eulerian_bernoulli_check(1, 0).unwrap();
        assert_eq!(
            (e.consistent.clone(), e.printed.clone()),
            (rat(1, 1), rat(1, 1))
        );
        assert!(e.consistent_matches && e.printed_matches);
        let r = eulerian_bernoulli_report(&BernoulliOracle::default(), 8);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r
            .notes
            .iter()
            .any(|n| n.contains("(n=2, k=1): printed 9 vs oracle 1")));
    }
}
