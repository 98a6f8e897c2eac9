use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::BigRat;
use crate::qcore::q_integer;

use super::classical::binomial;

/// `beta_m(h,k,q) = (1-q)^{-m} sum_{j=0}^{m} C(m,j) (-1)^j ((h+j)/[h+j])^k`
/// for `h >= 1` and rational `q != 1`.
pub fn beta_q(m: u32, h: u32, k: i32, q: &BigRat) -> Result<BigRat> {
    if h < 1 {
        return Err(Error::Domain("beta_q needs h >= 1".into()));
    }
    if q.is_one() {
        return Err(Error::Domain("beta_q needs q != 1".into()));
    }
    let mut sum = BigRat::zero();
    for j in 0..=m {
        let idx = h + j;
        let qi = q_integer(idx).eval_rat(q)?;
        if qi.is_zero() {
            return Err(Error::Domain(format!("[{idx}] vanishes at q = {q}")));
        }
        let ratio: BigRat = BigRat::from_integer(idx.into()) / qi;
        let term = BigRat::from_integer(binomial(m, j)) * Pow::pow(&ratio, k);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let scale: BigRat = Pow::pow(&(BigRat::one() - q), -(m as i32));
    Ok(sum * scale)
}
