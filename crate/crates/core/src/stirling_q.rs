//! q-deformed Stirling triangles of both kinds, their closed forms, the
//! q-Newton–Gregory expansion, q-Bell numbers and the connection identities.
//!
//! Both triangles use the normalization fixed by the recurrences
//!
//! ```text
//! S(n+1,k,q) = q^{k-1} S(n,k-1,q) + [k] S(n,k,q)
//! s(n+1,k,q) = q^{-n} (s(n,k-1,q) - [n] s(n,k,q))
//! ```
//!
//! with `S(0,0,q) = s(0,0,q) = 1`, which makes them the connection
//! coefficients between `[x]^n` and the q-falling factorials
//! `[x][x-1]...[x-n+1]`. In this normalization the alternating closed form
//! is `Δ_q^k 0^n / [k]!` with no extra power of `q`. The generating-function
//! normalization that carries `q^{k(1-k)/2}` in front of the Gaussian
//! binomial expansion is [`kim_normalized`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{BigRat, LaurentPoly};
use crate::qcore::{q_binomial_at_integer, q_binomial_rows, q_factorial, q_falling_at, q_integer};
use crate::report::VerificationReport;

static ZERO: LaurentPoly = LaurentPoly::zero();

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

/// Triangle of `s(n,k,q)` or `S(n,k,q)` for `0 <= k <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QStirlingTable {
    kind: Kind,
    max_n: u32,
    rows: Vec<Vec<LaurentPoly>>,
}

#[derive(Deserialize)]
struct RawTable {
    kind: Kind,
    max_n: u32,
    rows: Vec<Vec<LaurentPoly>>,
}

impl<'de> Deserialize<'de> for QStirlingTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(d)?;
        let shaped = raw.rows.len() == raw.max_n as usize + 1
            && raw.rows.iter().enumerate().all(|(n, r)| r.len() == n + 1);
        if !shaped {
            return Err(serde::de::Error::custom(
                "rows do not form a triangle of size max_n",
            ));
        }
        Ok(QStirlingTable {
            kind: raw.kind,
            max_n: raw.max_n,
            rows: raw.rows,
        })
    }
}

impl QStirlingTable {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    /// Entry `(n,k)`; zero outside the triangle.
    pub fn get(&self, n: i64, k: i64) -> &LaurentPoly {
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        self.rows
            .get(n as usize)
            .and_then(|r| r.get(k as usize))
            .unwrap_or(&ZERO)
    }

    /// Shared table of at least size `n`, built once per process.
    pub fn cached(kind: Kind, n: u32) -> Arc<QStirlingTable> {
        static CACHE: OnceLock<Mutex<HashMap<Kind, Arc<QStirlingTable>>>> = OnceLock::new();
        let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
        if let Some(t) = cache.get(&kind) {
            if t.max_n >= n {
                return Arc::clone(t);
            }
        }
        let t = Arc::new(match kind {
            Kind::First => build_first_table(n),
            Kind::Second => build_second_table(n),
        });
        cache.insert(kind, Arc::clone(&t));
        t
    }
}

/// `S(n,k,q)` for `0 <= k <= n <= max_n`.
pub fn build_second_table(max_n: u32) -> QStirlingTable {
    let mut rows = vec![vec![LaurentPoly::one()]];
    for n in 0..max_n as usize {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).unwrap_or(&ZERO);
        let mut row = vec![LaurentPoly::zero()];
        for k in 1..=n + 1 {
            let shifted = at(k - 1).shift(k as i64 - 1);
            row.push(shifted + q_integer(k as u32) * at(k));
        }
        rows.push(row);
    }
    QStirlingTable {
        kind: Kind::Second,
        max_n,
        rows,
    }
}

/// `s(n,k,q)` for `0 <= k <= n <= max_n`; entries are Laurent polynomials.
pub fn build_first_table(max_n: u32) -> QStirlingTable {
    let mut rows = vec![vec![LaurentPoly::one()]];
    for n in 0..max_n as usize {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).unwrap_or(&ZERO);
        let qn = q_integer(n as u32);
        let mut row = vec![LaurentPoly::zero()];
        for k in 1..=n + 1 {
            row.push((at(k - 1) - &qn * at(k)).shift(-(n as i64)));
        }
        rows.push(row);
    }
    QStirlingTable {
        kind: Kind::First,
        max_n,
        rows,
    }
}

fn check_index(n: u32, k: u32) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::IndexOutOfTriangle {
            n: n as i64,
            k: k as i64,
        });
    }
    Ok(())
}

fn require_polynomial(p: LaurentPoly, what: &str) -> Result<LaurentPoly> {
    if p.is_polynomial() {
        Ok(p)
    } else {
        Err(Error::Domain(format!(
            "{what} produced negative exponents: {p}"
        )))
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn triangular(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Alternating Gaussian binomial sum divided exactly by `[k]!`:
/// `(1/[k]!) sum_{j=1}^{k} (-1)^{k-j} C(k,j)_q q^{(k-j)(k-j-1)/2} [j]^n`.
///
/// The `j = 0` term carries `[0]^n = 0` and is omitted.
pub fn stirling2_closed_form(n: u32, k: u32) -> Result<LaurentPoly> {
    check_index(n, k)?;
    let binoms = q_binomial_rows(k).swap_remove(k as usize);
    let sum: LaurentPoly = (1..=k)
        .map(|j| {
            let r = (k - j) as i64;
            (&binoms[j as usize] * q_integer(j).pow(n))
                .shift(triangular(r))
                .scale(&BigRat::from_integer(sign(r).into()))
        })
        .sum();
    require_polynomial(sum.exact_div(&q_factorial(k))?, "closed form")
}

/// The same sum with each `[j]^n` expanded as `(1-q^j)^n / (1-q)^n`:
///
/// ```text
/// (1/((1-q)^n [k]!)) sum_{j=0}^{k} sum_{d=0}^{n}
///     (-1)^{k-j-d} C(k,j)_q C(n,d) q^{((k-j)(k-j-1) + 2jd)/2}
/// ```
pub fn stirling2_double_sum(n: u32, k: u32) -> Result<LaurentPoly> {
    check_index(n, k)?;
    let binoms = q_binomial_rows(k).swap_remove(k as usize);
    let mut classical = BigInt::one();
    let mut sum = LaurentPoly::zero();
    for d in 0..=n as i64 {
        if d > 0 {
            classical = classical * BigInt::from(n as i64 - d + 1) / BigInt::from(d);
        }
        for j in 0..=k as i64 {
            let r = k as i64 - j;
            let c = BigRat::from_integer(&classical * sign(r - d));
            sum += binoms[j as usize].shift(triangular(r) + j * d).scale(&c);
        }
    }
    let one_minus_q = LaurentPoly::from_int_coeffs(&[1, -1]);
    let den = one_minus_q.pow(n) * q_factorial(k);
    require_polynomial(sum.exact_div(&den)?, "double sum")
}

/// `Δ_q^k 0^n / [k]!` with `Δ_q^k = prod_{m<k} (E - q^m)` applied to
/// `f(x) = [x]^n` over the integer points `0..=k`.
pub fn newton_gregory(n: u32, k: u32) -> Result<LaurentPoly> {
    check_index(n, k)?;
    let mut g: Vec<LaurentPoly> = (0..=k).map(|x| q_integer(x).pow(n)).collect();
    for m in 0..k as usize {
        g = (0..g.len() - 1)
            .map(|x| &g[x + 1] - g[x].shift(m as i64))
            .collect();
    }
    require_polynomial(g[0].exact_div(&q_factorial(k))?, "Newton-Gregory")
}

/// `q^{k(k-1)/2} S(n,k,q)`: the normalization for which
/// `[x]^n = sum_k C(x,k)_q [k]! q^{k(1-k)/2} S(n,k,q)`.
pub fn kim_normalized(entry: &LaurentPoly, k: u32) -> LaurentPoly {
    entry.shift(triangular(k as i64))
}

/// `B(n,q) = sum_k S(n,k,q)`.
pub fn bell_q(table: &QStirlingTable, n: u32) -> Result<LaurentPoly> {
    if table.kind != Kind::Second {
        return Err(Error::Domain(
            "q-Bell numbers need the second-kind table".into(),
        ));
    }
    if n > table.max_n {
        return Err(Error::IndexOutOfTriangle { n: n as i64, k: 0 });
    }
    Ok(table.rows[n as usize].iter().sum())
}

/// `B(0,q), ..., B(max_n,q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QBellSequence {
    pub max_n: u32,
    pub values: Vec<LaurentPoly>,
}

impl QBellSequence {
    pub fn from_table(table: &QStirlingTable) -> Result<Self> {
        let values = (0..=table.max_n)
            .map(|n| bell_q(table, n))
            .collect::<Result<_>>()?;
        Ok(QBellSequence {
            max_n: table.max_n,
            values,
        })
    }
}

/// Both Kronecker-delta sums `sum_k s(n,k)S(k,m)` and `sum_k S(n,k)s(k,m)`
/// for `1 <= m <= n <= max_n`.
pub fn orthogonality_check(max_n: u32) -> VerificationReport {
    let s1 = QStirlingTable::cached(Kind::First, max_n);
    let s2 = QStirlingTable::cached(Kind::Second, max_n);
    let mut report = VerificationReport::new("orthogonality").with_range("n", max_n as i64);
    for n in 1..=max_n as i64 {
        for m in 1..=n {
            let expected = if n == m {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            };
            let first_second: LaurentPoly = (m..=n).map(|k| s1.get(n, k) * s2.get(k, m)).sum();
            let second_first: LaurentPoly = (m..=n).map(|k| s2.get(n, k) * s1.get(k, m)).sum();
            report.check(
                format!("sum s(n,k)S(k,m) at n={n}, m={m}"),
                &expected,
                &first_second,
            );
            report.check(
                format!("sum S(n,k)s(k,m) at n={n}, m={m}"),
                &expected,
                &second_first,
            );
        }
    }
    report
}

/// `[x]^n - sum_j S(n,j,q) [x][x-1]...[x-j+1]`.
pub fn connection_check_second(x: u32, n: u32) -> LaurentPoly {
    let s2 = QStirlingTable::cached(Kind::Second, n);
    let rhs: LaurentPoly = (0..=n)
        .map(|j| s2.get(n as i64, j as i64) * q_falling_at(x, j))
        .sum();
    q_integer(x).pow(n) - rhs
}

/// `[x][x-1]...[x-n+1] - sum_j s(n,j,q) [x]^j`.
pub fn connection_check_first(x: u32, n: u32) -> LaurentPoly {
    let s1 = QStirlingTable::cached(Kind::First, n);
    let qx = q_integer(x);
    let rhs: LaurentPoly = (0..=n)
        .map(|j| s1.get(n as i64, j as i64) * qx.pow(j))
        .sum();
    q_falling_at(x, n) - rhs
}

/// `[x]^n - sum_k C(x,k)_q [k]! q^{k(1-k)/2} S_K(n,k,q)` where `S_K` is
/// [`kim_normalized`].
pub fn connection_check_qbinom(x: u32, n: u32) -> Result<LaurentPoly> {
    let s2 = QStirlingTable::cached(Kind::Second, n);
    let mut rhs = LaurentPoly::zero();
    for k in 0..=n {
        let entry = kim_normalized(s2.get(n as i64, k as i64), k);
        let term = q_binomial_at_integer(x, k)? * q_factorial(k) * entry;
        rhs += term.shift(-triangular(k as i64));
    }
    Ok(q_integer(x).pow(n) - rhs)
}

/// Closed form and double sum against the recurrence table.
pub fn closed_form_check(max_n: u32) -> VerificationReport {
    let s2 = QStirlingTable::cached(Kind::Second, max_n);
    let mut report = VerificationReport::new("closed-form").with_range("n", max_n as i64);
    for n in 1..=max_n {
        for k in 1..=n {
            let expected = s2.get(n as i64, k as i64);
            for (name, got) in [
                ("closed form", stirling2_closed_form(n, k)),
                ("double sum", stirling2_double_sum(n, k)),
            ] {
                let loc = format!("{name} at n={n}, k={k}");
                match got {
                    Ok(p) => {
                        report.check(loc, expected, &p);
                    }
                    Err(e) => report.fail(loc, expected, e),
                }
            }
        }
    }
    report
}

pub fn newton_gregory_check(max_n: u32) -> VerificationReport {
    let s2 = QStirlingTable::cached(Kind::Second, max_n);
    let mut report = VerificationReport::new("newton-gregory").with_range("n", max_n as i64);
    for n in 1..=max_n {
        for k in 1..=n {
            let expected = s2.get(n as i64, k as i64);
            let loc = format!("n={n}, k={k}");
            match newton_gregory(n, k) {
                Ok(p) => {
                    report.check(loc, expected, &p);
                }
                Err(e) => report.fail(loc, expected, e),
            }
        }
    }
    report
}

/// `S(n,1)=1`, `S(n,2)=[2]^{n-1}-1`, `S(n,n)=q^{n(n-1)/2}` and the
/// first-kind diagonal `s(n,n)=q^{-n(n-1)/2}`.
pub fn special_values_check(max_n: u32) -> VerificationReport {
    let s1 = QStirlingTable::cached(Kind::First, max_n);
    let s2 = QStirlingTable::cached(Kind::Second, max_n);
    let mut report = VerificationReport::new("special-values").with_range("n", max_n as i64);
    let two = q_integer(2);
    for n in 1..=max_n as i64 {
        report.check(format!("S({n},1)"), &LaurentPoly::one(), s2.get(n, 1));
        if n >= 2 {
            let expected = two.pow(n as u32 - 1) - LaurentPoly::one();
            report.check(format!("S({n},2)"), &expected, s2.get(n, 2));
        }
        report.check(
            format!("S({n},{n})"),
            &LaurentPoly::q_pow(triangular(n)),
            s2.get(n, n),
        );
        report.check(
            format!("s({n},{n})"),
            &LaurentPoly::q_pow(-triangular(n)),
            s1.get(n, n),
        );
    }
    report
}

/// Residuals of the three connection identities for `x <= max_x`, `n <= max_n`.
pub fn connection_suite(max_x: u32, max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("connection")
        .with_range("x", max_x as i64)
        .with_range("n", max_n as i64);
    let zero = LaurentPoly::zero();
    for x in 0..=max_x {
        for n in 0..=max_n {
            report.check(
                format!("second kind x={x}, n={n}"),
                &zero,
                &connection_check_second(x, n),
            );
            report.check(
                format!("first kind x={x}, n={n}"),
                &zero,
                &connection_check_first(x, n),
            );
            let loc = format!("q-binomial x={x}, n={n}");
            match connection_check_qbinom(x, n) {
                Ok(r) => {
                    report.check(loc, &zero, &r);
                }
                Err(e) => report.fail(loc, &zero, e),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(c)
    }

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    #[test]
    fn second_kind_entries() {
        let t = build_second_table(6);
        assert_eq!(t.get(3, 2), &p(&[0, 2, 1]));
        assert_eq!(t.get(4, 4), &q(6));
        assert_eq!(t.get(2, 2), &q(1));
        for n in 1..=6 {
            assert_eq!(t.get(n, 1), &LaurentPoly::one());
            assert!(t.get(n, 0).is_zero());
        }
        assert_eq!(t.get(0, 0), &LaurentPoly::one());
        assert!(t.get(2, 3).is_zero());
        assert!(t.get(3, -1).is_zero());
    }

    #[test]
    fn first_kind_entries() {
        let t = build_first_table(6);
        assert_eq!(t.get(2, 1), &-q(-1));
        assert_eq!(t.get(3, 2), &(-(q(-3).scale(&rat(2, 1))) - q(-2)));
        assert_eq!(t.get(3, 1), &(q(-3) + q(-2)));
        let at_one: Vec<_> = (1..=3)
            .map(|k| t.get(3, k).eval_rat(&rat(1, 1)).unwrap())
            .collect();
        assert_eq!(at_one, vec![rat(2, 1), rat(-3, 1), rat(1, 1)]);
        for n in 1..=6i64 {
            let lo = t.rows()[n as usize]
                .iter()
                .filter_map(|e| e.min_exponent())
                .min()
                .unwrap();
            assert!(lo >= -triangular(n));
        }
    }

    #[test]
    fn closed_forms_match_examples() {
        assert_eq!(stirling2_closed_form(3, 2).unwrap(), p(&[0, 2, 1]));
        assert_eq!(stirling2_closed_form(1, 1).unwrap(), LaurentPoly::one());
        for n in 1..=10u32 {
            assert_eq!(
                stirling2_closed_form(n, n).unwrap(),
                q(triangular(n as i64))
            );
            assert_eq!(newton_gregory(n, 1).unwrap(), LaurentPoly::one());
        }
        assert_eq!(stirling2_double_sum(3, 2).unwrap(), p(&[0, 2, 1]));
        assert_eq!(stirling2_double_sum(2, 2).unwrap(), q(1));
        assert_eq!(stirling2_double_sum(1, 1).unwrap(), LaurentPoly::one());
        assert_eq!(newton_gregory(3, 2).unwrap(), p(&[0, 2, 1]));
        assert_eq!(newton_gregory(2, 2).unwrap(), q(1));
        assert!(matches!(
            stirling2_closed_form(2, 3),
            Err(Error::IndexOutOfTriangle { .. })
        ));
        assert!(matches!(
            newton_gregory(2, 0),
            Err(Error::IndexOutOfTriangle { .. })
        ));
    }

    // The reindexed sum (j >= 1, [j]^{n-1}/([j-1]![k-j]!)) agrees with the
    // alternating Gaussian-binomial sum term by term once both are scaled
    // by [k]!.
    #[test]
    fn reindexed_sum_agrees_termwise() {
        for k in 1..=8u32 {
            let binoms = q_binomial_rows(k).swap_remove(k as usize);
            let kf = q_factorial(k);
            for n in k..=k + 3 {
                for j in 1..=k {
                    let lhs = &binoms[j as usize] * q_integer(j).pow(n);
                    let coeff = kf
                        .exact_div(&(q_factorial(j - 1) * q_factorial(k - j)))
                        .unwrap();
                    let rhs = coeff * q_integer(j).pow(n - 1);
                    assert_eq!(lhs, rhs, "n={n} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn printed_prefactor_changes_normalization() {
        // Carrying q^{k(1-k)/2} in front of the closed form gives 2 + q
        // rather than the table entry 2q + q^2.
        let with_prefactor = stirling2_closed_form(3, 2).unwrap().shift(-1);
        assert_eq!(with_prefactor, p(&[2, 1]));
    }

    #[test]
    fn bell_numbers() {
        let t = build_second_table(7);
        assert_eq!(bell_q(&t, 3).unwrap(), p(&[1, 2, 1, 1]));
        assert_eq!(bell_q(&t, 1).unwrap(), LaurentPoly::one());
        let seq = QBellSequence::from_table(&t).unwrap();
        let at_one: Vec<_> = seq
            .values
            .iter()
            .map(|b| b.eval_rat(&rat(1, 1)).unwrap())
            .collect();
        let expected: Vec<_> = [1, 1, 2, 5, 15, 52, 203, 877]
            .iter()
            .map(|&v| rat(v, 1))
            .collect();
        assert_eq!(at_one, expected);
        assert!(bell_q(&t, 8).is_err());
        assert!(bell_q(&build_first_table(3), 2).is_err());
    }

    #[test]
    fn orthogonality_small_cases() {
        let s1 = build_first_table(3);
        let s2 = build_second_table(3);
        let n3m1: LaurentPoly = (1..=3).map(|k| s1.get(3, k) * s2.get(k, 1)).sum();
        assert!(n3m1.is_zero());
        assert_eq!(s1.get(2, 2) * s2.get(2, 2), LaurentPoly::one());
        let r = orthogonality_check(8);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks_run, 2 * 36);
    }

    #[test]
    fn connection_identities_examples() {
        assert!(connection_check_second(0, 1).is_zero());
        assert!(connection_check_second(3, 2).is_zero());
        assert!(connection_check_second(5, 4).is_zero());
        assert!(connection_check_first(2, 2).is_zero());
        assert!(connection_check_first(0, 1).is_zero());
        assert!(connection_check_first(4, 3).is_zero());
        assert!(connection_check_qbinom(1, 1).unwrap().is_zero());
        assert!(connection_check_qbinom(3, 3).unwrap().is_zero());
        assert!(connection_check_qbinom(2, 4).unwrap().is_zero());
    }

    #[test]
    fn table_json_round_trip() {
        let t = build_first_table(5);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with(r#"{"kind":"first","max_n":5,"rows":[[[[0,"1"]]]"#));
        let back: QStirlingTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"kind":"second","max_n":2,"rows":[[[[0,"1"]]]]}"#;
        assert!(serde_json::from_str::<QStirlingTable>(bad).is_err());
    }
}
