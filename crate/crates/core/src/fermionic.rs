//! Fermionic Stirling numbers `s_f(n,k)` and `S_f(n,k)`, i.e. the q-Stirling
//! triangles at q = -1, where every q-integer collapses to `epsilon_n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact_arith::{rat, BigRat};
use crate::qcore::epsilon;
use crate::report::VerificationReport;
use crate::stirling_q::{Kind, QStirlingTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionicTable {
    pub max_n: u32,
    /// `s_f(n,k)`, rows `0..=max_n`.
    pub first: Vec<Vec<BigInt>>,
    /// `S_f(n,k)`, rows `0..=max_n`.
    pub second: Vec<Vec<BigInt>>,
    /// `epsilon_0 ..= epsilon_max_n`.
    pub epsilon: Vec<i64>,
}

fn read(rows: &[Vec<BigInt>], n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    rows.get(n as usize)
        .and_then(|r| r.get(k as usize))
        .cloned()
        .unwrap_or_default()
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl FermionicTable {
    /// `s_f(n,k)`; zero outside the triangle.
    pub fn first_kind(&self, n: i64, k: i64) -> BigInt {
        read(&self.first, n, k)
    }

    /// `S_f(n,k)`; zero outside the triangle.
    pub fn second_kind(&self, n: i64, k: i64) -> BigInt {
        read(&self.second, n, k)
    }
}

/// Fills both triangles from
///
/// ```text
/// s_f(n+1,k) = (-1)^n s_f(n,k-1) + (-1)^{n+1} eps_n s_f(n,k)
/// S_f(n+1,k) = (-1)^{k-1} S_f(n,k-1) + eps_k S_f(n,k)
/// ```
///
/// seeded with `s_f(0,0) = S_f(0,0) = 1`, which yields `s_f(1,1) = S_f(1,1) = 1`
/// and zero first columns.
pub fn build_fermionic_tables(max_n: u32) -> FermionicTable {
    let mut first = vec![vec![BigInt::one()]];
    let mut second = vec![vec![BigInt::one()]];
    for n in 0..max_n as i64 {
        let eps_n = epsilon(n as u64);
        let mut f_row = vec![BigInt::zero()];
        let mut s_row = vec![BigInt::zero()];
        for k in 1..=n + 1 {
            f_row.push(
                read(&first, n, k - 1) * parity_sign(n)
                    + read(&first, n, k) * (parity_sign(n + 1) * eps_n),
            );
            s_row.push(
                read(&second, n, k - 1) * parity_sign(k - 1)
                    + read(&second, n, k) * epsilon(k as u64),
            );
        }
        first.push(f_row);
        second.push(s_row);
    }
    FermionicTable {
        max_n,
        first,
        second,
        epsilon: (0..=max_n as u64).map(epsilon).collect(),
    }
}

/// `s_f(n,k) = 0` whenever `n > 2k`, `k >= 1`.
pub fn vanishing_check(max_n: u32) -> VerificationReport {
    let t = build_fermionic_tables(max_n);
    let mut report = VerificationReport::new("vanishing").with_range("n", max_n as i64);
    let zero = BigInt::zero();
    for n in 1..=max_n as i64 {
        for k in 1..=n {
            if n > 2 * k {
                report.check(format!("s_f({n},{k})"), &zero, &t.first_kind(n, k));
            }
        }
    }
    report
}

/// Small-k values and diagonals: `S_f(n,1)=1`, `S_f(n,2)=-1`,
/// `S_f(n,3)=2-n`, `S_f(n,4)=n-3`, `S_f(n,n)=s_f(n,n)=(-1)^{n(n-1)/2}`.
pub fn special_values_check(max_n: u32) -> VerificationReport {
    let t = build_fermionic_tables(max_n);
    let mut report =
        VerificationReport::new("fermionic-special-values").with_range("n", max_n as i64);
    for n in 1..=max_n as i64 {
        let b = BigInt::from;
        report.check(format!("S_f({n},1)"), &b(1), &t.second_kind(n, 1));
        if n >= 2 {
            report.check(format!("S_f({n},2)"), &b(-1), &t.second_kind(n, 2));
        }
        if n >= 3 {
            report.check(format!("S_f({n},3)"), &b(2 - n), &t.second_kind(n, 3));
        }
        if n >= 4 {
            report.check(format!("S_f({n},4)"), &b(n - 3), &t.second_kind(n, 4));
        }
        let diag = b(parity_sign(n * (n - 1) / 2));
        report.check(format!("S_f({n},{n})"), &diag, &t.second_kind(n, n));
        report.check(format!("s_f({n},{n})"), &diag, &t.first_kind(n, n));
    }
    report
}

/// Both inversion sums `sum_j s_f(n,j)S_f(j,m)` and `sum_j S_f(n,j)s_f(j,m)`.
pub fn fermionic_inversion_check(max_n: u32) -> VerificationReport {
    let t = build_fermionic_tables(max_n);
    let mut report = VerificationReport::new("inversion").with_range("n", max_n as i64);
    for n in 1..=max_n as i64 {
        for m in 1..=n {
            let delta = BigInt::from((n == m) as i64);
            let fs: BigInt = (m..=n)
                .map(|j| t.first_kind(n, j) * t.second_kind(j, m))
                .sum();
            let sf: BigInt = (m..=n)
                .map(|j| t.second_kind(n, j) * t.first_kind(j, m))
                .sum();
            report.check(format!("sum s_f(n,j)S_f(j,m) at n={n}, m={m}"), &delta, &fs);
            report.check(format!("sum S_f(n,j)s_f(j,m) at n={n}, m={m}"), &delta, &sf);
        }
    }
    report
}

/// The q-tables evaluated exactly at q = -1 against the fermionic tables.
pub fn q_specialization_check(max_n: u32) -> VerificationReport {
    let t = build_fermionic_tables(max_n);
    let s1 = QStirlingTable::cached(Kind::First, max_n);
    let s2 = QStirlingTable::cached(Kind::Second, max_n);
    let minus_one = rat(-1, 1);
    let mut report = VerificationReport::new("specialization").with_range("n", max_n as i64);
    for n in 0..=max_n as i64 {
        for k in 0..=n {
            for (name, poly, expected) in [
                ("S", s2.get(n, k), t.second_kind(n, k)),
                ("s", s1.get(n, k), t.first_kind(n, k)),
            ] {
                let loc = format!("{name}({n},{k},q=-1)");
                let expected = BigRat::from_integer(expected);
                match poly.eval_rat(&minus_one) {
                    Ok(v) => {
                        report.check(loc, &expected, &v);
                    }
                    Err(e) => report.fail(loc, expected, e),
                }
            }
        }
    }
    report
}

/// The two alternate second-kind recurrences.
///
/// `S_f(n+1,j) = S_f(n,j) + S_f(n,j-1)` for odd `j > 3` is checked and
/// violations are failures. The three-term form
/// `S_f(n+1,j) = S_f(n,j) - S_f(n-1,j-2)` is swept over `2 <= j <= n <= max_n`;
/// its violations are listed as notes, since only its range of validity
/// is being mapped.
pub fn alt_recurrence_check(max_n: u32) -> VerificationReport {
    let t = build_fermionic_tables(max_n + 1);
    let mut report = VerificationReport::new("alt-recurrence").with_range("n", max_n as i64);
    for n in 1..=max_n as i64 {
        for j in (5..=n).step_by(2) {
            let lhs = t.second_kind(n + 1, j);
            let rhs = t.second_kind(n, j) + t.second_kind(n, j - 1);
            report.check(format!("odd j: S_f({},{j})", n + 1), &lhs, &rhs);
        }
    }
    let mut violations = Vec::new();
    let mut swept = 0u64;
    for n in 2..=max_n as i64 {
        for j in 2..=n {
            swept += 1;
            let lhs = t.second_kind(n + 1, j);
            let rhs = t.second_kind(n, j) - t.second_kind(n - 1, j - 2);
            if lhs != rhs {
                violations.push(format!("(n={n}, j={j}): {lhs} vs {rhs}"));
            }
        }
    }
    if violations.is_empty() {
        report.note(format!(
            "S_f(n+1,j) = S_f(n,j) - S_f(n-1,j-2) holds on all {swept} pairs 2 <= j <= n <= {max_n}"
        ));
    } else {
        report.note(format!(
            "S_f(n+1,j) = S_f(n,j) - S_f(n-1,j-2) fails on {} of {swept} pairs: {}",
            violations.len(),
            violations.join(", ")
        ));
    }
    report
}

/// `[x]_f^{(j)} = eps_x eps_{x-1} ... eps_{x-j+1}`; reaching `eps_0 = 0`
/// ends the product before any negative index.
pub fn fermionic_falling(x: u32, j: u32) -> i64 {
    let mut prod = 1;
    for i in 0..j {
        if i > x {
            break;
        }
        prod *= epsilon((x - i) as u64);
        if prod == 0 {
            break;
        }
    }
    prod
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionicResidual {
    /// `[x]_f^n - sum_j S_f(n,j) [x]_f^{(j)}`
    pub powers: BigInt,
    /// `[x]_f^{(n)} - sum_j s_f(n,j) [x]_f^j`
    pub falling: BigInt,
}

pub fn fermionic_connection_check(table: &FermionicTable, x: u32, n: u32) -> FermionicResidual {
    let eps_x = epsilon(x as u64);
    let n_i = n as i64;
    let power = |e: u32| BigInt::from(if e == 0 { 1 } else { eps_x });
    let by_falling: BigInt = (0..=n)
        .map(|j| table.second_kind(n_i, j as i64) * fermionic_falling(x, j))
        .sum();
    let by_power: BigInt = (0..=n)
        .map(|j| table.first_kind(n_i, j as i64) * power(j))
        .sum();
    FermionicResidual {
        powers: power(n) - by_falling,
        falling: BigInt::from(fermionic_falling(x, n)) - by_power,
    }
}

/// Vanishing, special values, alternate recurrences and the connection
/// identities for `0 <= x <= max_n`, `1 <= n <= max_n`.
pub fn fermionic_suite(max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("fermionic").with_range("n", max_n as i64);
    report.absorb(vanishing_check(max_n));
    report.absorb(special_values_check(max_n));
    report.absorb(alt_recurrence_check(max_n));
    let t = build_fermionic_tables(max_n);
    let mut conn = VerificationReport::new("connection").with_range("n", max_n as i64);
    let zero = BigInt::zero();
    for x in 0..=max_n {
        for n in 1..=max_n {
            let r = fermionic_connection_check(&t, x, n);
            conn.check(format!("powers x={x}, n={n}"), &zero, &r.powers);
            conn.check(format!("falling x={x}, n={n}"), &zero, &r.falling);
        }
        for j in 2..=max_n {
            conn.check(format!("[{x}]_f falling {j}"), &0, &fermionic_falling(x, j));
        }
    }
    report.absorb(conn);
    report
}
