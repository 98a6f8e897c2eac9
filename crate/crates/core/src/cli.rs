//! `qstirling` command-line front end.
//!
//! Exit codes: 0 on success or a passing suite, 1 when a verification
//! suite records failures, 2 on invalid arguments or domain errors.
//! Every invocation writes one UTF-8 JSON document (or CSV for
//! `table --format csv`) to standard output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::analytic::{self, eulerian, zeta_via_stirling1, BernoulliOracle};
use crate::error::Error;
use crate::exact_arith::{
    format_rat, parse_rat, BigRat, ComplexVal, LaurentPoly, DEFAULT_TRUNCATION,
};
use crate::fermionic::{self, build_fermionic_tables};
use crate::report::VerificationReport;
use crate::stirling_q::{
    self, build_first_table, build_second_table, QBellSequence, QStirlingTable,
};

/// Environment variable overriding the power-series truncation order.
pub const TRUNCATION_ENV: &str = "QSTIRLING_TRUNCATION";

#[derive(Debug, Parser)]
#[command(
    name = "qstirling",
    version,
    about = "Exact q-deformed Stirling numbers and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a triangle or sequence, symbolically or evaluated at a rational q.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Evaluate entries at this rational q ("num/den").
        #[arg(long = "q", allow_negative_numbers = true)]
        q_eval: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Evaluate the interpolation function Y_S(z, k, q).
    Interp {
        #[arg(long = "z", allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long = "z-im", allow_negative_numbers = true, default_value_t = 0.0)]
        z_im: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// Partial sum of zeta(k+1) over first-kind Stirling numbers.
    Zeta {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        terms: u64,
    },
    /// Bernoulli number of higher order B_index^(order).
    Bernoulli {
        #[arg(long, allow_negative_numbers = true)]
        order: i64,
        #[arg(long)]
        index: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    S1,
    S2,
    Sf1,
    Sf2,
    Bell,
    Eulerian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthogonality,
    ClosedForm,
    NewtonGregory,
    Connection,
    Fermionic,
    Inversion,
    Specialization,
    Gessel,
    EulerianBernoulli,
    All,
}

const ALL_SUITES: [Suite; 9] = [
    Suite::Orthogonality,
    Suite::ClosedForm,
    Suite::NewtonGregory,
    Suite::Connection,
    Suite::Fermionic,
    Suite::Inversion,
    Suite::Specialization,
    Suite::Gessel,
    Suite::EulerianBernoulli,
];

/// A failed command: usage problems map to exit 2.
#[derive(Debug)]
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn truncation_from_env() -> Result<usize, Usage> {
    match std::env::var(TRUNCATION_ENV) {
        Err(_) => Ok(DEFAULT_TRUNCATION),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(Usage(format!(
                "{TRUNCATION_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn emit(out: &mut dyn Write, doc: &Value) -> Result<(), Usage> {
    writeln!(out, "{doc}").map_err(|e| Usage(format!("write failed: {e}")))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        Command::Table {
            kind,
            n,
            q_eval,
            format,
        } => {
            let q = q_eval.as_deref().map(parse_rat).transpose()?;
            let table = build_table(kind, n, q.as_ref())?;
            match format {
                Format::Json => emit(out, &table.to_json())?,
                Format::Csv => table
                    .write_csv(out)
                    .map_err(|e| Usage(format!("csv output failed: {e}")))?,
            }
            Ok(0)
        }
        Command::Verify { suite, n } => {
            let report = run_suite(suite, n)?;
            let doc = serde_json::to_value(&report).map_err(|e| Usage(e.to_string()))?;
            emit(out, &doc)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Interp { z_re, z_im, k, q } => {
            let r = analytic::ys_eval(ComplexVal::new(z_re, z_im), k, q)?;
            emit(
                out,
                &json!({
                    "z": {"re": r.z.re, "im": r.z.im},
                    "k": r.k,
                    "q": r.q,
                    "value": {"re": r.value.re, "im": r.value.im},
                }),
            )?;
            Ok(0)
        }
        Command::Zeta { k, terms } => {
            let r = zeta_via_stirling1(k, terms)?;
            emit(
                out,
                &serde_json::to_value(r).map_err(|e| Usage(e.to_string()))?,
            )?;
            Ok(0)
        }
        Command::Bernoulli { order, index } => {
            let oracle = BernoulliOracle::new(truncation_from_env()?);
            let b = oracle.value(order, index)?;
            emit(
                out,
                &json!({
                    "order": b.order,
                    "index": b.index,
                    "truncation": oracle.truncation(),
                    "value": format_rat(&b.value),
                }),
            )?;
            Ok(0)
        }
    }
}

/// Runs one suite; `All` folds every suite into a single report.
fn run_suite(suite: Suite, n: u32) -> Result<VerificationReport, Usage> {
    if n < 1 {
        return Err(Usage("--n must be at least 1".into()));
    }
    let needs_series = matches!(suite, Suite::Gessel | Suite::EulerianBernoulli | Suite::All);
    let oracle = if needs_series {
        let t = truncation_from_env()?;
        if (n as usize) >= t {
            return Err(Usage(format!(
                "--n {n} needs Bernoulli indices up to {n}, beyond truncation order {t}; raise {TRUNCATION_ENV}"
            )));
        }
        Some(BernoulliOracle::new(t))
    } else {
        None
    };
    let report = match suite {
        Suite::Orthogonality => stirling_q::orthogonality_check(n),
        Suite::ClosedForm => {
            let mut r = stirling_q::closed_form_check(n);
            r.absorb(stirling_q::special_values_check(n));
            r
        }
        Suite::NewtonGregory => stirling_q::newton_gregory_check(n),
        Suite::Connection => stirling_q::connection_suite(n, n),
        Suite::Fermionic => fermionic::fermionic_suite(n),
        Suite::Inversion => fermionic::fermionic_inversion_check(n),
        Suite::Specialization => fermionic::q_specialization_check(n),
        Suite::Gessel => analytic::gessel_report(oracle.as_ref().unwrap(), n),
        Suite::EulerianBernoulli => {
            let mut r = analytic::eulerian_bernoulli_report(oracle.as_ref().unwrap(), n);
            r.absorb(analytic::eulerian_stirling_report(n));
            r
        }
        Suite::All => {
            let mut all = VerificationReport::new("all").with_range("n", n as i64);
            for s in ALL_SUITES {
                all.absorb(run_suite(s, n)?);
            }
            all
        }
    };
    Ok(report)
}

/// A materialized table ready for output.
enum Table {
    Poly {
        kind: &'static str,
        max_n: u32,
        rows: Vec<Vec<Cell>>,
    },
    Sequence {
        kind: &'static str,
        max_n: u32,
        values: Vec<Cell>,
    },
    Integer {
        kind: &'static str,
        max_n: u32,
        rows: Vec<Vec<BigInt>>,
    },
}

enum Cell {
    Symbolic(LaurentPoly),
    Value(BigRat),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Symbolic(p) => serde_json::to_value(p).unwrap_or(Value::Null),
            Cell::Value(v) => Value::String(format_rat(v)),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Symbolic(p) => p.to_string(),
            Cell::Value(v) => format_rat(v),
        }
    }
}

fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

impl Table {
    fn to_json(&self) -> Value {
        match self {
            Table::Poly { kind, max_n, rows } => json!({
                "kind": kind,
                "max_n": max_n,
                "rows": rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            Table::Sequence {
                kind,
                max_n,
                values,
            } => json!({
                "kind": kind,
                "max_n": max_n,
                "values": values.iter().map(Cell::to_json).collect::<Vec<_>>(),
            }),
            Table::Integer { kind, max_n, rows } => json!({
                "kind": kind,
                "max_n": max_n,
                "rows": rows.iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            Table::Poly { rows, .. } => {
                w.write_record(["n", "k", "value"])?;
                for (n, row) in rows.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        w.write_record([n.to_string(), k.to_string(), c.to_csv()])?;
                    }
                }
            }
            Table::Sequence { values, .. } => {
                w.write_record(["n", "value"])?;
                for (n, c) in values.iter().enumerate() {
                    w.write_record([n.to_string(), c.to_csv()])?;
                }
            }
            Table::Integer { rows, .. } => {
                w.write_record(["n", "k", "value"])?;
                for (n, row) in rows.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        w.write_record([n.to_string(), k.to_string(), v.to_string()])?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn cell(p: &LaurentPoly, q: Option<&BigRat>) -> Result<Cell, Usage> {
    Ok(match q {
        None => Cell::Symbolic(p.clone()),
        Some(q) => Cell::Value(p.eval_rat(q)?),
    })
}

fn poly_rows(t: &QStirlingTable, q: Option<&BigRat>) -> Result<Vec<Vec<Cell>>, Usage> {
    t.rows()
        .iter()
        .map(|r| r.iter().map(|p| cell(p, q)).collect())
        .collect()
}

fn build_table(kind: TableKind, n: u32, q: Option<&BigRat>) -> Result<Table, Usage> {
    if q.is_some() && matches!(kind, TableKind::Sf1 | TableKind::Sf2 | TableKind::Eulerian) {
        return Err(Usage(
            "--q applies only to the s1, s2 and bell tables".into(),
        ));
    }
    Ok(match kind {
        TableKind::S1 => Table::Poly {
            kind: "first",
            max_n: n,
            rows: poly_rows(&build_first_table(n), q)?,
        },
        TableKind::S2 => Table::Poly {
            kind: "second",
            max_n: n,
            rows: poly_rows(&build_second_table(n), q)?,
        },
        TableKind::Bell => {
            let seq = QBellSequence::from_table(&build_second_table(n))?;
            Table::Sequence {
                kind: "bell",
                max_n: n,
                values: seq
                    .values
                    .iter()
                    .map(|p| cell(p, q))
                    .collect::<Result<_, _>>()?,
            }
        }
        TableKind::Sf1 => Table::Integer {
            kind: "sf1",
            max_n: n,
            rows: build_fermionic_tables(n).first,
        },
        TableKind::Sf2 => Table::Integer {
            kind: "sf2",
            max_n: n,
            rows: build_fermionic_tables(n).second,
        },
        TableKind::Eulerian => {
            let mut rows = vec![Vec::new()];
            for m in 1..=n {
                rows.push(
                    (0..m)
                        .map(|k| eulerian(m, k))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            Table::Integer {
                kind: "eulerian",
                max_n: n,
                rows,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qstirling"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn table_second_kind_row_three() {
        let (code, out, _) = call(&["table", "s2", "--n", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"][3][2], json!([[1, "2"], [2, "1"]]));
        let back: QStirlingTable = serde_json::from_str(&out).unwrap();
        assert_eq!(back, build_second_table(3));
    }

    #[test]
    fn table_evaluated_and_fermionic() {
        let (_, out, _) = call(&["table", "s2", "--n", "3", "--q", "1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"][3], json!(["0", "1", "3", "1"]));
        let (_, out, _) = call(&["table", "sf2", "--n", "5"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"][5][3], json!(-3));
        let (code, _, err) = call(&["table", "s1", "--n", "3", "--q", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("q = 0"));
        let (code, _, _) = call(&["table", "sf1", "--n", "3", "--q", "1/2"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = call(&["table", "s2", "--n", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,k,value\n0,0,1\n1,0,0\n1,1,1\n2,0,0\n2,1,1\n2,2,q\n");
        let (_, out, _) = call(&["table", "bell", "--n", "2", "--format", "csv", "--q", "2"]);
        assert_eq!(out, "n,value\n0,1\n1,1\n2,3\n");
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = call(&["verify", "orthogonality", "--n", "6"]);
        assert_eq!(code, 0);
        let r: VerificationReport = serde_json::from_str(&out).unwrap();
        assert!(r.passed() && r.checks_run > 0);
        let (code, _, _) = call(&["verify", "closed-form", "--n", "0"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["verify", "nonsense", "--n", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn scalar_commands() {
        let (code, out, _) = call(&["interp", "--z", "-3", "--k", "2", "--q", "0.5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"]["re"].as_f64().unwrap() - 1.25).abs() < 1e-12);
        let (code, _, err) = call(&["interp", "--z", "-3", "--k", "2", "--q", "-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("outside (-1, 1]"));
        let (code, out, _) = call(&["bernoulli", "--order", "-2", "--index", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "1");
        let (code, _, _) = call(&["bernoulli", "--order", "1", "--index", "24"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["zeta", "--k", "3", "--terms", "2"]);
        assert_eq!(code, 2);
    }
}
