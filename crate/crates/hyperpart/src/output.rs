//! Output rendering for the CLI: text, CSV (header row always present) and
//! JSON. JSON output is deterministic: object keys are sorted and every
//! count is a decimal string.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bounds::{BoundValue, BoundsReport, ConstantSet, CrossingRow, Verdict};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, VectorPartitionTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?}; expected text, csv or json"
            ))),
        }
    }
}

/// Serializes a JSON value on one line. `serde_json` maps are ordered, so
/// identical values always print identically.
pub fn json_line(value: &Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

pub fn count_output(family: &str, d: u32, index: &Value, value: &str, format: Format) -> String {
    match format {
        Format::Text => format!("{value}\n"),
        Format::Csv => {
            let idx = index_csv(index);
            format!("family,d,index,value\n{family},{d},{idx},{value}\n")
        }
        Format::Json => json_line(&json!({
            "family": family,
            "d": d,
            "index": index,
            "value": value,
        })),
    }
}

fn index_csv(index: &Value) -> String {
    match index {
        Value::Array(items) => items
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        other => other.to_string(),
    }
}

pub fn series_output(kind: &str, d: Option<u32>, series: &TruncatedSeries, format: Format) -> String {
    match format {
        Format::Text => {
            let joined = series
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("{joined}\n")
        }
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
            out
        }
        Format::Json => {
            let coeffs: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
            json_line(&json!({
                "kind": kind,
                "d": d,
                "order": series.order(),
                "coeffs": coeffs,
            }))
        }
    }
}

pub fn table_output(table: &VectorPartitionTable, format: Format) -> String {
    match format {
        // the planar case prints as a matrix, higher dimensions as rows
        Format::Text | Format::Csv if table.dim() == 2 => {
            let caps = table.caps();
            let mut out = String::from("n1/n2");
            for j in 0..=caps[1] {
                let _ = write!(out, ",{j}");
            }
            out.push('\n');
            for i in 0..=caps[0] {
                let _ = write!(out, "{i}");
                for j in 0..=caps[1] {
                    let _ = write!(out, ",{}", table.get(&[i, j]));
                }
                out.push('\n');
            }
            out
        }
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for axis in 1..=table.dim() {
                let _ = write!(out, "n{axis},");
            }
            out.push_str("value\n");
            for index in table.indices() {
                for x in &index {
                    let _ = write!(out, "{x},");
                }
                let _ = writeln!(out, "{}", table.get(&index));
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = table
                .indices()
                .map(|index| json!({"index": index, "value": table.get(&index).to_string()}))
                .collect();
            json_line(&json!({
                "caps": table.caps(),
                "d": table.dim(),
                "entries": entries,
            }))
        }
    }
}

pub fn constants_output(rows: &[ConstantSet], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for c in rows {
                let _ = writeln!(
                    out,
                    "d={} alpha={:.6} beta={:.6} gamma={:.6} delta_lower={:.6} zeta={:.9}",
                    c.d, c.alpha.value, c.beta.value, c.gamma.value, c.delta_lower.value,
                    c.zeta_value.value,
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("d,alpha,beta,gamma,delta_lower,zeta\n");
            for c in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.d, c.alpha.value, c.beta.value, c.gamma.value, c.delta_lower.value,
                    c.zeta_value.value,
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|c| c.to_json()).collect();
            json_line(&json!({ "constants": rows }))
        }
    }
}

pub fn crossing_output(rows: &[CrossingRow], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let _ = writeln!(
                    out,
                    "d={} alpha={:.6} gamma={:.6} alpha>gamma: {}",
                    r.d, r.alpha.value, r.gamma.value, r.alpha_gt_gamma,
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("d,alpha,gamma,alpha_gt_gamma\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.d, r.alpha.value, r.gamma.value, r.alpha_gt_gamma
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "d": r.d,
                        "alpha": r.alpha.value,
                        "gamma": r.gamma.value,
                        "alpha_gt_gamma": r.alpha_gt_gamma,
                    })
                })
                .collect();
            json_line(&json!({ "crossing": rows }))
        }
    }
}

pub fn report_output(report: &BoundsReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for i in &report.instances {
                let _ = writeln!(
                    out,
                    "{:7} {} {} : {} {} {}",
                    i.verdict.as_str(),
                    i.name,
                    params_flat(&i.params),
                    value_str(&i.lhs),
                    relation_str(i),
                    value_str(&i.rhs),
                );
            }
            let _ = writeln!(
                out,
                "{}: {} passed, {} failed, {} skipped",
                if report.all_pass() { "PASS" } else { "FAIL" },
                report.passed(),
                report.failed(),
                report.skipped(),
            );
            out
        }
        Format::Csv => {
            let mut out = String::from("instance,params,lhs,relation,rhs,verdict,error_bound\n");
            for i in &report.instances {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    i.name,
                    params_flat(&i.params),
                    value_str(&i.lhs),
                    relation_str(i),
                    value_str(&i.rhs),
                    i.verdict.as_str(),
                    i.error_bound,
                );
            }
            out
        }
        Format::Json => json_line(&report.to_json()),
    }
}

/// `{"d": 2, "n": 3}` -> `d=2;n=3` (CSV-safe, no commas or quotes).
fn params_flat(params: &Value) -> String {
    match params.as_object() {
        Some(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", index_csv(v)))
            .collect::<Vec<_>>()
            .join(";"),
        None => index_csv(params),
    }
}

fn value_str(v: &Option<BoundValue>) -> String {
    match v {
        Some(BoundValue::Int(v)) => v.to_string(),
        Some(BoundValue::Real(a)) => format!("{}", a.value),
        None => "-".into(),
    }
}

fn relation_str(i: &crate::bounds::Instance) -> &'static str {
    use crate::bounds::Relation;
    match i.relation {
        Relation::Le => "<=",
        Relation::Ge => ">=",
        Relation::Eq => "==",
    }
}

/// True iff no instance failed (skips are allowed).
pub fn report_exit_ok(report: &BoundsReport) -> bool {
    report.instances.iter().all(|i| i.verdict != Verdict::Fail)
}
