//! q-integers, q-factorials, Gaussian binomials and the fermionic basic
//! numbers obtained at q = -1.

use crate::error::{Error, Result};
use num_traits::One;

use crate::exact_arith::{BigRat, LaurentPoly};

/// `[n] = 1 + q + ... + q^{n-1}`, with `[0] = 0`.
pub fn q_integer(n: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n as i64).map(|e| (e, BigRat::one())))
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n).map(q_integer).product()
}

/// Rows `0..=n` of the Gaussian binomial triangle, built with the q-Pascal
/// rule `C(m,k) = C(m-1,k-1) + q^k C(m-1,k)`.
pub fn q_binomial_rows(n: u32) -> Vec<Vec<LaurentPoly>> {
    let mut rows: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one()]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        row.push(LaurentPoly::one());
        for k in 1..m {
            row.push(&prev[k - 1] + &prev[k].shift(k as i64));
        }
        row.push(LaurentPoly::one());
        rows.push(row);
    }
    rows
}

/// Gaussian binomial `C(n,k)_q`.
pub fn q_binomial(n: u32, k: u32) -> Result<LaurentPoly> {
    if k > n {
        return Err(Error::IndexOutOfTriangle {
            n: n as i64,
            k: k as i64,
        });
    }
    let mut rows = q_binomial_rows(n);
    Ok(rows.swap_remove(n as usize).swap_remove(k as usize))
}

/// `C(x,k)_q` for an integer top argument: `[x][x-1]...[x-k+1] / [k]!`.
/// Zero when `x < k`, since the product passes through `[0]`.
pub fn q_binomial_at_integer(x: u32, k: u32) -> Result<LaurentPoly> {
    let falling = q_falling_at(x, k);
    if falling.is_zero() {
        return Ok(falling);
    }
    falling.exact_div(&q_factorial(k))
}

/// q-falling factorial `[x][x-1]...[x-k+1]`; empty product for `k = 0`.
pub fn q_falling_at(x: u32, k: u32) -> LaurentPoly {
    if k > x {
        return LaurentPoly::zero();
    }
    (0..k).map(|i| q_integer(x - i)).product()
}

/// `epsilon_n = [n]` at q = -1: 1 for odd n, 0 for even n.
pub fn epsilon(n: u64) -> i64 {
    (n % 2) as i64
}
