use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_arith::{rat, ComplexVal};
use crate::report::VerificationReport;
use crate::stirling_q::{Kind, QStirlingTable};

use super::classical::{binomial, factorial};

/// One evaluation of `Y_S(z,k,q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpResult {
    pub z: ComplexVal,
    pub k: u32,
    pub q: f64,
    pub value: ComplexVal,
}

fn admissible(q: f64) -> Result<()> {
    if !q.is_finite() || q <= -1.0 || q > 1.0 || q == 0.0 {
        return Err(Error::Domain(format!(
            "q = {q} is outside (-1, 1] \\ {{0}}; at q = -1 the q-factorial [k]! vanishes"
        )));
    }
    Ok(())
}

/// `[n]` as a float; positive for admissible `q` and `n >= 1`.
fn q_int(n: u32, q: f64) -> f64 {
    if q == 1.0 {
        n as f64
    } else {
        (1.0 - q.powi(n as i32)) / (1.0 - q)
    }
}

/// `Y_S(z,k,q) = (1/[k]!) sum_{j=1}^{k} (-1)^{k-j} C(k,j)_q q^{(k-j)(k-j-1)/2} [j]^{-z}`
///
/// with the principal branch `[j]^{-z} = exp(-z ln [j])`. At `z = -n` this
/// reproduces `S(n,k,q)` from the recurrence table. The `j = 0` term, whose
/// `[0]^{-z}` is undefined for general `z`, is omitted; it vanishes at every
/// interpolation node `z = -n`, `n >= 1`.
pub fn ys_eval(z: ComplexVal, k: u32, q: f64) -> Result<InterpResult> {
    admissible(q)?;
    if k < 1 {
        return Err(Error::Domain("Y_S needs k >= 1".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("z = {z} is not finite")));
    }
    let ints: Vec<f64> = (0..=k).map(|j| q_int(j, q)).collect();
    let fact: f64 = ints[1..].iter().product();
    // C(k,j)_q by the product formula, updated in j.
    let mut binom = 1.0;
    let mut sum = ComplexVal::new(0.0, 0.0);
    for j in 1..=k {
        binom *= ints[(k - j + 1) as usize] / ints[j as usize];
        let r = (k - j) as i32;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let weight = sign * binom * q.powi(r * (r - 1) / 2);
        sum += (-z * ints[j as usize].ln()).exp() * weight;
    }
    let value = sum / fact;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Domain(format!("Y_S({z},{k},{q}) is not finite")));
    }
    Ok(InterpResult { z, k, q, value })
}

/// `Y_S(z,k)` at `q = 1`: `(1/k!) sum_{j=1}^{k} (-1)^{k-j} C(k,j) j^{-z}`.
pub fn ys_eval_q1(z: ComplexVal, k: u32) -> ComplexVal {
    let fact = factorial(k).to_f64().unwrap_or(f64::INFINITY);
    let mut sum = ComplexVal::new(0.0, 0.0);
    for j in 1..=k {
        let sign = if (k - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        let c = binomial(k, j).to_f64().unwrap_or(f64::INFINITY);
        sum += (-z * (j as f64).ln()).exp() * (sign * c);
    }
    sum / fact
}

/// `B(n,q) = sum_{k=1}^{n} Y_S(-n,k,q)`; the `k = 0` term is zero for `n >= 1`.
pub fn bell_q_via_ys(n: u32, q: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("bell_q_via_ys needs n >= 1".into()));
    }
    let z = ComplexVal::new(-(n as f64), 0.0);
    let mut total = 0.0;
    for k in 1..=n {
        total += ys_eval(z, k, q)?.value.re;
    }
    Ok(total)
}

/// `|Y_S(-n,k,q) - S(n,k,q)| <= tol * max(1, |S|)` for `1 <= k <= n <= max_n`.
pub fn interpolation_report(max_n: u32, qs: &[f64], tol: f64) -> VerificationReport {
    let table = QStirlingTable::cached(Kind::Second, max_n);
    let mut report = VerificationReport::new("interpolation").with_range("n", max_n as i64);
    for &q in qs {
        let q_exact = rat_from_f64(q);
        for n in 1..=max_n {
            for k in 1..=n {
                let loc = format!("n={n}, k={k}, q={q}");
                let exact = table
                    .get(n as i64, k as i64)
                    .eval_rat(&q_exact)
                    .ok()
                    .and_then(|v| v.to_f64())
                    .unwrap_or(f64::NAN);
                match ys_eval(ComplexVal::new(-(n as f64), 0.0), k, q) {
                    Ok(r) => {
                        report.check_close(loc, exact, r.value.re, tol * exact.abs().max(1.0));
                    }
                    Err(e) => report.fail(loc, exact, e),
                }
            }
        }
    }
    report
}

/// Exact rational value of a finite double.
pub(crate) fn rat_from_f64(x: f64) -> crate::exact_arith::BigRat {
    crate::exact_arith::BigRat::from_float(x).unwrap_or_else(|| rat(0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::classical::{classical_stirling2, stirling2_via_eulerian};

    fn at(n: u32) -> ComplexVal {
        ComplexVal::new(-(n as f64), 0.0)
    }

    #[test]
    fn interpolation_examples() {
        let v = ys_eval(at(3), 2, 0.5).unwrap().value;
        assert!((v.re - 1.25).abs() < 1e-12 && v.im.abs() < 1e-12);
        for q in [0.3, 0.7, -0.5, 1.0] {
            for n in 1..=8 {
                let v = ys_eval(at(n), 1, q).unwrap().value;
                assert!((v.re - 1.0).abs() < 1e-12);
            }
        }
        let v = ys_eval(at(4), 4, 0.3).unwrap().value;
        assert!((v.re - 0.3f64.powi(6)).abs() < 1e-15);
    }

    #[test]
    fn rejects_inadmissible_q() {
        for q in [-1.0, 0.0, 1.5, -2.0, f64::NAN] {
            assert!(
                matches!(ys_eval(at(2), 2, q), Err(Error::Domain(_))),
                "q={q}"
            );
        }
        assert!(ys_eval(at(2), 0, 0.5).is_err());
    }

    #[test]
    fn complex_arguments_are_finite() {
        let v = ys_eval(ComplexVal::new(0.5, 2.0), 3, 0.7).unwrap().value;
        assert!(v.re.is_finite() && v.im.is_finite());
        // Real z gives a real value.
        let v = ys_eval(ComplexVal::new(1.5, 0.0), 3, 0.7).unwrap().value;
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn q_one_path() {
        assert!((ys_eval_q1(at(3), 2).re - 3.0).abs() < 1e-12);
        assert!((ys_eval_q1(at(4), 1).re - 1.0).abs() < 1e-12);
        assert!((ys_eval_q1(at(4), 4).re - 1.0).abs() < 1e-12);
        for n in 1..=12 {
            for k in 1..=n {
                let s = classical_stirling2(n, k).to_f64().unwrap();
                let eul = stirling2_via_eulerian(n, k).unwrap().to_f64().unwrap();
                let v = ys_eval_q1(at(n), k).re;
                assert!((v - s).abs() <= 1e-9 * s.max(1.0), "n={n} k={k}");
                assert_eq!(eul, s);
            }
        }
    }

    #[test]
    fn bell_via_interpolation() {
        assert!((bell_q_via_ys(3, 0.5).unwrap() - 2.375).abs() < 1e-12);
        assert!((bell_q_via_ys(1, -0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!((bell_q_via_ys(3, 1.0).unwrap() - 5.0).abs() < 1e-12);
        assert!(bell_q_via_ys(0, 0.5).is_err());
    }

    #[test]
    fn interpolation_matches_table() {
        let r = interpolation_report(8, &[0.3, 0.7, -0.5, 1.0], 1e-9);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
