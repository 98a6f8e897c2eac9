use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::rat::{format_rat, parse_rat, BigRat};
use super::ComplexVal;
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with exact rational coefficients.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero,
/// so two polynomials are mathematically equal iff they are `==`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRat>,
}

impl LaurentPoly {
    pub const fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRat::from_integer(BigInt::from(c)))
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigRat, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigRat::one(), exp)
    }

    /// Builds `c[0] + c[1] q + c[2] q^2 + ...`.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, BigRat::from_integer(BigInt::from(c)))),
        )
    }

    /// Collects `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRat)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRat)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> Option<&BigRat> {
        self.terms.get(&exp)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + by, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn add_term(&mut self, e: i64, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Dense coefficient vector starting at `min_exponent`.
    fn dense(&self) -> (i64, Vec<BigRat>) {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return (0, Vec::new());
        };
        let mut v = vec![BigRat::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, coeffs: Vec<BigRat>) -> Self {
        LaurentPoly {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both operands are shifted to ordinary polynomials and divided from
    /// the lowest exponent up. The quotient can only have exponents up to
    /// `max(self) - max(divisor)`; needing a term beyond that bound means
    /// the remainder is nonzero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (a_lo, mut rem) = self.dense();
        let (d_lo, dv) = divisor.dense();
        let d_lead = dv[0].clone();
        let n_quot = rem.len() as i64 - dv.len() as i64 + 1;
        let non_exact = || Error::NonExactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let mut quot = vec![BigRat::zero(); n_quot.max(0) as usize];
        for i in 0..rem.len() {
            if rem[i].is_zero() {
                continue;
            }
            if i as i64 >= n_quot {
                return Err(non_exact());
            }
            let qc = &rem[i] / &d_lead;
            for (j, dc) in dv.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= dc * &qc;
                }
            }
            quot[i] = qc;
        }
        Ok(LaurentPoly::from_dense(a_lo - d_lo, quot))
    }

    /// Exact value at a rational point.
    pub fn eval_rat(&self, q0: &BigRat) -> Result<BigRat> {
        let Some(lo) = self.min_exponent() else {
            return Ok(BigRat::zero());
        };
        if q0.is_zero() {
            if lo < 0 {
                return Err(Error::ZeroAtNegativeExponent { min_exponent: lo });
            }
            return Ok(self.coeff(0).cloned().unwrap_or_else(BigRat::zero));
        }
        // Horner on the descending exponents, then rescale by q0^lo.
        let mut acc = BigRat::zero();
        let mut prev: Option<i64> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= rat_pow(q0, p - e);
            }
            acc += c;
            prev = Some(e);
        }
        Ok(acc * rat_pow(q0, lo))
    }

    /// Floating-point value at a complex point.
    pub fn eval_complex(&self, q0: ComplexVal) -> Result<ComplexVal> {
        let Some(lo) = self.min_exponent() else {
            return Ok(ComplexVal::new(0.0, 0.0));
        };
        if q0 == ComplexVal::new(0.0, 0.0) && lo < 0 {
            return Err(Error::ZeroAtNegativeExponent { min_exponent: lo });
        }
        let mut acc = ComplexVal::new(0.0, 0.0);
        let mut prev: Option<i64> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= q0.powi((p - e) as i32);
            }
            acc += rat_to_f64(c);
            prev = Some(e);
        }
        if lo != 0 {
            acc *= q0.powi(lo as i32);
        }
        Ok(acc)
    }

    /// Floating-point value at a real point.
    pub fn eval_f64(&self, q0: f64) -> Result<f64> {
        Ok(self.eval_complex(ComplexVal::new(q0, 0.0))?.re)
    }
}

fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    use num_traits::Pow;
    Pow::pow(base, exp as i32)
}

pub(crate) fn rat_to_f64(r: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Convolution for integer coefficient vectors: i128 while nothing
/// overflows, BigInt otherwise. `None` if any coefficient is fractional.
fn integer_convolution(av: &[BigRat], bv: &[BigRat]) -> Option<Vec<BigRat>> {
    use num_traits::ToPrimitive;
    if !av.iter().chain(bv).all(|c| c.is_integer()) {
        return None;
    }
    let len = av.len() + bv.len() - 1;
    let small =
        |v: &[BigRat]| -> Option<Vec<i128>> { v.iter().map(|c| c.numer().to_i128()).collect() };
    if let (Some(a), Some(b)) = (small(av), small(bv)) {
        let mut out = vec![0i128; len];
        let mut ok = true;
        'outer: for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                match x.checked_mul(y).and_then(|p| out[i + j].checked_add(p)) {
                    Some(v) => out[i + j] = v,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return Some(
                out.into_iter()
                    .map(|v| BigRat::from_integer(BigInt::from(v)))
                    .collect(),
            );
        }
    }
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in av.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bv.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x.numer() * y.numer();
            }
        }
    }
    Some(out.into_iter().map(BigRat::from_integer).collect())
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $Trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.len() == 1 || rhs.len() == 1 {
            let (mono, other) = if self.len() == 1 {
                (self, rhs)
            } else {
                (rhs, self)
            };
            let (&e, c) = mono.terms.iter().next().unwrap();
            return other.shift(e).scale(c);
        }
        let (a_lo, av) = self.dense();
        let (b_lo, bv) = rhs.dense();
        if let Some(out) = integer_convolution(&av, &bv) {
            return LaurentPoly::from_dense(a_lo + b_lo, out);
        }
        let mut out = vec![BigRat::zero(); av.len() + bv.len() - 1];
        for (i, ca) in av.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in bv.iter().enumerate() {
                if !cb.is_zero() {
                    out[i + j] += ca * cb;
                }
            }
        }
        LaurentPoly::from_dense(a_lo + b_lo, out)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl From<BigRat> for LaurentPoly {
    fn from(c: BigRat) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

/// Human-readable form, e.g. `2*q + q^2` or `-2*q^-3 - q^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let coeff = format_rat(&abs);
            let coeff = if abs.is_integer() {
                coeff
            } else {
                format!("({coeff})")
            };
            if e == 0 {
                f.write_str(&coeff)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{coeff}*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serialized as `[[exponent, "num/den"], ...]`, ascending by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, format_rat(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, s) in raw {
            let c = parse_rat(&s).map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
