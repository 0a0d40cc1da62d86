//! Rendering of tables and reports. Every number is written in the canonical
//! rational text form, including inside JSON.

use level2_core::conjecture::ConjectureExtraction;
use level2_core::exact::format_rational;
use level2_core::verify::{IdentityReport, RowResult};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::Format;

/// Joins a table with a header. csv and tsv differ only in the delimiter;
/// no field ever contains either delimiter, so nothing is quoted.
pub fn delimited(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    let sep = if format == Format::Tsv { "\t" } else { "," };
    let mut out = header.join(sep);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(sep));
        out.push('\n');
    }
    out
}

pub fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

/// Triangle rows: csv lines look like `3:0,4,5,1`, tsv lines like
/// `3\t0\t4\t5\t1`.
pub fn triangle(format: Format, rows: &[Vec<BigInt>], signed: bool) -> String {
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.iter().map(BigInt::to_string).collect())
        .collect();
    match format {
        Format::Json => json_text(&json!({
            "nmax": rows.len() - 1,
            "signed": signed,
            "rows": strings,
        })),
        Format::Tsv => {
            let mut out = String::from("n\tvalues\n");
            for (n, row) in strings.iter().enumerate() {
                out.push_str(&format!("{n}\t{}\n", row.join("\t")));
            }
            out
        }
        _ => {
            let mut out = String::from("n:values\n");
            for (n, row) in strings.iter().enumerate() {
                out.push_str(&format!("{n}:{}\n", row.join(",")));
            }
            out
        }
    }
}

fn row_json(r: &RowResult) -> Value {
    json!({
        "n": r.n,
        "lhs": format_rational(&r.lhs),
        "rhs": format_rational(&r.rhs),
        "equal": r.equal,
    })
}

fn conjecture_json(ex: &ConjectureExtraction) -> Value {
    let polys: Vec<Value> = ex
        .polynomials
        .iter()
        .map(|p| {
            json!({
                "k": p.k,
                "coefficients": p.interpolated_coefficients.iter().map(format_rational).collect::<Vec<_>>(),
                "degree_ok": p.degree_ok,
                "sample_points": p
                    .sample_points
                    .iter()
                    .map(|(n, v)| json!({"n": n, "value": format_rational(v)}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "r": ex.r,
        "polynomials": polys,
        "constant_is_one": ex.constant_is_one,
        "top_matches": ex.top_matches,
    })
}

pub fn report(format: Format, report: &IdentityReport) -> String {
    match format {
        Format::Json => {
            let mut value = json!({
                "identity": report.identity,
                "nmax": report.nmax,
                "status": report.status.name(),
                "results": report.results.iter().map(row_json).collect::<Vec<_>>(),
                "first_failure": report.first_failure.as_ref().map(|r| json!({
                    "n": r.n,
                    "lhs": format_rational(&r.lhs),
                    "rhs": format_rational(&r.rhs),
                })),
            });
            if let Some(ex) = &report.conjecture {
                value["conjecture"] = conjecture_json(ex);
            }
            json_text(&value)
        }
        Format::Csv | Format::Tsv => {
            let rows: Vec<Vec<String>> = report
                .results
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format_rational(&r.lhs),
                        format_rational(&r.rhs),
                        r.equal.to_string(),
                    ]
                })
                .collect();
            delimited(format, &["n", "lhs", "rhs", "equal"], &rows)
        }
        Format::Text => report_text(report),
    }
}

fn poly_text(coeffs: &[String]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match i {
            0 => c.clone(),
            1 => format!("({c}) n"),
            _ => format!("({c}) n^{i}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn report_text(report: &IdentityReport) -> String {
    let mut out = format!(
        "identity {}  nmax {}  status {}\n",
        report.identity,
        report.nmax,
        report.status.name()
    );
    for r in &report.results {
        let mark = if r.equal { "ok  " } else { "FAIL" };
        out.push_str(&format!(
            "{mark} n={} lhs={} rhs={}\n",
            r.n,
            format_rational(&r.lhs),
            format_rational(&r.rhs)
        ));
    }
    match &report.first_failure {
        Some(r) => out.push_str(&format!(
            "first failure at n={}: lhs={} rhs={}\n",
            r.n,
            format_rational(&r.lhs),
            format_rational(&r.rhs)
        )),
        None => out.push_str("no failures\n"),
    }
    if let Some(ex) = &report.conjecture {
        for p in &ex.polynomials {
            let coeffs: Vec<String> = p.interpolated_coefficients.iter().map(format_rational).collect();
            out.push_str(&format!(
                "P_{{{},{}}}(n) = {}  degree_ok={}\n",
                ex.r,
                2 * p.k,
                poly_text(&coeffs),
                p.degree_ok
            ));
        }
        out.push_str(&format!(
            "P_{{{r},0}} = 1: {}  P_{{{r},{}}} = (2n-{})^{}: {}\n",
            ex.constant_is_one,
            2 * ex.r,
            2 * ex.r + 1,
            2 * ex.r,
            ex.top_matches,
            r = ex.r,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_csv_rows() {
        let rows = vec![
            vec![BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(triangle(Format::Csv, &rows, false), "n:values\n0:1\n1:0,1\n");
        assert_eq!(triangle(Format::Tsv, &rows, false), "n\tvalues\n0\t1\n1\t0\t1\n");
    }

    #[test]
    fn polynomial_text() {
        let c = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(poly_text(&c(&["9", "-12", "4"])), "(4) n^2 + (-12) n + 9");
        assert_eq!(poly_text(&c(&["1"])), "1");
        assert_eq!(poly_text(&[]), "0");
    }
}
