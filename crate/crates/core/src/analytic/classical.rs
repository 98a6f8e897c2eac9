use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::BigRat;
use crate::report::VerificationReport;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `S(n,k)` rows `0..=max_n` from `S(n+1,k) = S(n,k-1) + k S(n,k)`.
pub fn classical_stirling2_table(max_n: u32) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..max_n as usize {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                left + at(k) * BigInt::from(k)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Signed `s(n,k)` rows from `s(n+1,k) = s(n,k-1) - n s(n,k)`.
pub fn classical_stirling1_table(max_n: u32) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..max_n as usize {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                left - at(k) * BigInt::from(n)
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn classical_stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    classical_stirling2_table(n)
        .swap_remove(n as usize)
        .swap_remove(k as usize)
}

pub fn classical_stirling1(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    classical_stirling1_table(n)
        .swap_remove(n as usize)
        .swap_remove(k as usize)
}

/// Bell numbers `B(0..=max_n)` from the Bell triangle (Aitken's array),
/// independent of any Stirling table.
pub fn classical_bell(max_n: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..max_n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let x = next.last().unwrap() + v;
            next.push(x);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(max_n as usize + 1);
    out
}

/// `E(n,k) = sum_{j=0}^{k} (-1)^j C(n+1,j) (k+1-j)^n` for `0 <= k <= n-1`.
pub fn eulerian(n: u32, k: u32) -> Result<BigInt> {
    if n < 1 || k >= n {
        return Err(Error::IndexOutOfTriangle {
            n: n as i64,
            k: k as i64,
        });
    }
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(n + 1, j) * BigInt::from(k + 1 - j).pow(n);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `(1/m!) sum_{j=0}^{n-1} E(n,j) C(j, n-m)`.
pub fn stirling2_via_eulerian(n: u32, m: u32) -> Result<BigRat> {
    if n < 1 || m > n {
        return Err(Error::IndexOutOfTriangle {
            n: n as i64,
            k: m as i64,
        });
    }
    let mut sum = BigInt::zero();
    for j in 0..n {
        sum += eulerian(n, j)? * binomial(j, n - m);
    }
    Ok(BigRat::new(sum, factorial(m)))
}

/// `S(n,m) - (1/m!) sum_j E(n,j) C(j, n-m)`.
pub fn eulerian_stirling_check(n: u32, m: u32) -> Result<BigRat> {
    let s = BigRat::from_integer(classical_stirling2(n, m));
    Ok(s - stirling2_via_eulerian(n, m)?)
}

pub fn eulerian_stirling_report(max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("eulerian-stirling").with_range("n", max_n as i64);
    let zero = BigRat::zero();
    for n in 1..=max_n {
        for m in 0..=n {
            let loc = format!("n={n}, m={m}");
            match eulerian_stirling_check(n, m) {
                Ok(r) => {
                    report.check(loc, &zero, &r);
                }
                Err(e) => report.fail(loc, &zero, e),
            }
        }
    }
    report
}
