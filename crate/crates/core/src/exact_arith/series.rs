use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::BigRat;
use crate::error::{Error, Result};

/// Default number of stored coefficients.
pub const DEFAULT_TRUNCATION: usize = 24;

/// Formal power series in `t` truncated before `t^order`.
///
/// Exactly `order` coefficients are stored. Binary operations on series
/// with different orders produce a result at the smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRat>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRat::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if let Some(c) = s.coeffs.first_mut() {
            *c = BigRat::one();
        }
        s
    }

    /// Takes the first `order` coefficients, padding with zeros.
    pub fn from_coeffs<I: IntoIterator<Item = BigRat>>(order: usize, coeffs: I) -> Self {
        let mut v: Vec<BigRat> = coeffs.into_iter().take(order).collect();
        v.resize(order, BigRat::zero());
        PowerSeries { coeffs: v }
    }

    /// `(e^t - 1)/t = sum_j t^j/(j+1)!`.
    pub fn expm1_over_t(order: usize) -> Self {
        let mut fact = BigInt::one();
        let coeffs = (0..order).map(|j| {
            fact *= BigInt::from(j + 1);
            BigRat::new(BigInt::one(), fact.clone())
        });
        Self::from_coeffs(order, coeffs.collect::<Vec<_>>())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&BigRat> {
        self.coeffs.get(index).ok_or(Error::TruncationExceeded {
            index,
            order: self.order(),
        })
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRat::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn pow(&self, mut n: u64) -> PowerSeries {
        let mut result = PowerSeries::one(self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse, solved coefficient by coefficient.
    pub fn inverse(&self) -> Result<PowerSeries> {
        let order = self.order();
        let Some(a0) = self.coeffs.first() else {
            return Ok(PowerSeries::zero(0));
        };
        if a0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRat> = Vec::with_capacity(order);
        out.push(inv0.clone());
        for n in 1..order {
            let s: BigRat = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-(s * &inv0));
        }
        Ok(PowerSeries { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn pow_zero_is_one() {
        let s = PowerSeries::expm1_over_t(8);
        assert_eq!(s.pow(0), PowerSeries::one(8));
    }

    #[test]
    fn reciprocal_of_unit_constant() {
        let s = PowerSeries::expm1_over_t(8);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeff(0).unwrap(), &rat(1, 1));
        // t/(e^t - 1) = 1 - t/2 + t^2/12 - t^4/720 + ...
        assert_eq!(inv.coeff(1).unwrap(), &rat(-1, 2));
        assert_eq!(inv.coeff(2).unwrap(), &rat(1, 12));
        assert_eq!(inv.coeff(3).unwrap(), &rat(0, 1));
        assert_eq!(inv.coeff(4).unwrap(), &rat(-1, 720));
        assert_eq!(s.mul(&inv), PowerSeries::one(8));
    }

    #[test]
    fn square_of_expm1_over_t() {
        let s = PowerSeries::expm1_over_t(6).pow(2);
        assert_eq!(s.coeff(1).unwrap(), &rat(1, 1));
        // (1 + t/2 + t^2/6)^2 at t^2: 1/6 + 1/4 + 1/6
        assert_eq!(s.coeff(2).unwrap(), &rat(7, 12));
    }

    #[test]
    fn non_invertible_and_truncation() {
        let s = PowerSeries::from_coeffs(4, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(s.inverse(), Err(Error::NonInvertibleSeries));
        assert_eq!(
            s.coeff(4),
            Err(Error::TruncationExceeded { index: 4, order: 4 })
        );
        let mixed = PowerSeries::one(3).mul(&PowerSeries::one(5));
        assert_eq!(mixed.order(), 3);
    }
}
