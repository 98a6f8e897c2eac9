use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::BigRat;

use super::classical::{classical_stirling1_table, factorial};

pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
/// Apéry's constant.
pub const ZETA_3: f64 = 1.2020569031595942;

/// Largest `terms` accepted by [`zeta_partial_sum_exact`].
pub const EXACT_TERMS_LIMIT: u64 = 500;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub k: u32,
    pub terms_used: u64,
    pub partial_sum: f64,
    /// Known only for `k = 1` and `k = 2`.
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
}

fn check_args(k: u32, terms: u64) -> Result<()> {
    if k < 1 {
        return Err(Error::Domain("zeta series needs k >= 1".into()));
    }
    if terms < k as u64 {
        return Err(Error::Domain(format!(
            "terms = {terms} must be at least k = {k}"
        )));
    }
    Ok(())
}

/// Terms `(-1)^{n-k} s(n,k) / (n n!)` for `n = k..=terms`, from the
/// factorial-scaled recurrence `a_{n+1}(j) = (a_n(j-1) - n a_n(j)) / (n+1)`
/// where `a_n(j) = s(n,j)/n!`.
pub fn zeta_terms(k: u32, terms: u64) -> Result<Vec<f64>> {
    check_args(k, terms)?;
    let k = k as usize;
    let mut a = vec![0.0f64; k + 1];
    a[1] = 1.0;
    let mut out = Vec::with_capacity((terms - k as u64 + 1) as usize);
    for n in 1..=terms {
        if n >= k as u64 {
            let sign = if (n - k as u64).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            out.push(sign * a[k] / n as f64);
        }
        let nf = n as f64;
        for j in (1..=k).rev() {
            a[j] = (a[j - 1] - nf * a[j]) / (nf + 1.0);
        }
    }
    Ok(out)
}

/// Partial sum of `zeta(k+1) = sum_{n>=k} (-1)^{n-k} s(n,k) / (n n!)` up to
/// `n = terms`.
pub fn zeta_via_stirling1(k: u32, terms: u64) -> Result<ZetaReport> {
    let t = zeta_terms(k, terms)?;
    // Terms are positive and decreasing; summing smallest first.
    let partial_sum: f64 = t.iter().rev().sum();
    let reference = match k {
        1 => Some(ZETA_2),
        2 => Some(ZETA_3),
        _ => None,
    };
    Ok(ZetaReport {
        k,
        terms_used: terms,
        partial_sum,
        reference,
        abs_error: reference.map(|r| (partial_sum - r).abs()),
    })
}

/// The same partial sum in exact rationals, for `terms <= EXACT_TERMS_LIMIT`.
pub fn zeta_partial_sum_exact(k: u32, terms: u64) -> Result<BigRat> {
    check_args(k, terms)?;
    if terms > EXACT_TERMS_LIMIT {
        return Err(Error::Domain(format!(
            "exact zeta sums are limited to {EXACT_TERMS_LIMIT} terms"
        )));
    }
    let s1 = classical_stirling1_table(terms as u32);
    let mut sum = BigRat::zero();
    for n in k as u64..=terms {
        let s = s1[n as usize][k as usize].clone();
        let signed = if (n - k as u64).is_multiple_of(2) {
            s
        } else {
            -s
        };
        sum += BigRat::new(signed, BigInt::from(n) * factorial(n as u32));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn k1_terms_are_inverse_squares() {
        let t = zeta_terms(1, 1000).unwrap();
        for (i, v) in t.iter().enumerate() {
            let n = (i + 1) as f64;
            let expect = 1.0 / (n * n);
            assert!((v - expect).abs() <= 1e-12 * expect, "n={n}");
        }
    }

    #[test]
    fn k2_terms_are_harmonic_over_square() {
        let t = zeta_terms(2, 200).unwrap();
        let mut h = 0.0;
        for (i, v) in t.iter().enumerate() {
            let n = (i + 2) as f64;
            h += 1.0 / (n - 1.0);
            assert!((v - h / (n * n)).abs() <= 1e-12 * v.abs());
        }
    }

    #[test]
    fn convergence_bounds() {
        let r = zeta_via_stirling1(1, 10_000).unwrap();
        assert!(r.abs_error.unwrap() < 2e-4);
        assert_eq!(r.terms_used, 10_000);
        let r = zeta_via_stirling1(3, 50).unwrap();
        assert_eq!(r.reference, None);
        assert!(zeta_via_stirling1(3, 2).is_err());
        assert!(zeta_via_stirling1(0, 10).is_err());
    }

    #[test]
    fn float_and_exact_agree() {
        for k in 1..=4 {
            let exact = zeta_partial_sum_exact(k, 120).unwrap().to_f64().unwrap();
            let float = zeta_via_stirling1(k, 120).unwrap().partial_sum;
            assert!((exact - float).abs() <= 1e-12 * exact, "k={k}");
        }
        assert!(zeta_partial_sum_exact(1, 501).is_err());
    }
}
