use std::io::Write;

use pseudocalc::inequalities::SuiteItem;
use pseudocalc::SuiteReport;

use crate::config::{CliResult, Failure};

pub const CHECK_COLUMNS: [&str; 12] = [
    "name",
    "generator",
    "direction",
    "p",
    "q",
    "r",
    "t",
    "lambda",
    "lhs_img",
    "rhs_img",
    "margin",
    "holds",
];

const PARAM_COLUMNS: [&str; 5] = ["p", "q", "r", "t", "lambda"];

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure::compute(format!("write failed: {e}"))
}

/// Shortest round-trip text, switching to exponent form for very small or large magnitudes.
fn fmt_num(v: f64) -> String {
    let m = v.abs();
    if v == 0.0 {
        "0".into()
    } else if !(1e-4..1e16).contains(&m) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn row(item: &SuiteItem) -> Vec<String> {
    let mut out = vec![item.name.clone(), item.generator.clone(), item.direction.to_string()];
    for col in PARAM_COLUMNS {
        out.push(item.params.get(col).map(|&v| fmt_num(v)).unwrap_or_default());
    }
    match &item.verdict {
        Some(v) => {
            out.push(fmt_num(v.lhs_img));
            out.push(fmt_num(v.rhs_img));
            out.push(fmt_num(v.margin));
            out.push(v.holds.to_string());
        }
        None => {
            out.extend([String::new(), String::new(), String::new()]);
            out.push("false".into());
        }
    }
    out
}

pub fn write_csv(out: &mut dyn Write, report: &SuiteReport, with_error: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = CHECK_COLUMNS.to_vec();
    if with_error {
        header.push("error");
    }
    w.write_record(&header).map_err(io_failure)?;
    for item in &report.items {
        let mut r = row(item);
        if with_error {
            r.push(
                item.error
                    .as_ref()
                    .map(|e| format!("{}: {}", e.kind, e.message))
                    .unwrap_or_default(),
            );
        }
        w.write_record(&r).map_err(io_failure)?;
    }
    w.flush().map_err(io_failure)
}

pub fn write_json(out: &mut dyn Write, report: &SuiteReport) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, report).map_err(io_failure)?;
    writeln!(out).map_err(io_failure)
}

pub fn write_human(out: &mut dyn Write, report: &SuiteReport) -> CliResult<()> {
    for item in &report.items {
        let params: Vec<String> = item.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let head = format!("#{:<3} {:<20} {:<10} {}", item.index, item.name, item.generator, params.join(" "));
        match (&item.verdict, &item.error) {
            (Some(v), _) => {
                let raw = |x: Option<f64>| x.map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{head}\n     lhs {} (img {:.10})  {}  rhs {} (img {:.10})  margin {:+.3e}  {}",
                    raw(v.lhs_raw),
                    v.lhs_img,
                    v.expected.symbol(),
                    raw(v.rhs_raw),
                    v.rhs_img,
                    v.margin,
                    if v.holds { "HOLDS" } else { "FAILS" }
                )
                .map_err(io_failure)?;
            }
            (None, Some(e)) => writeln!(out, "{head}\n     {}: {}", e.kind, e.message).map_err(io_failure)?,
            (None, None) => {}
        }
    }
    let s = report.summary;
    writeln!(
        out,
        "{} checked, {} held, {} failed, {} errors",
        s.total, s.held, s.failed, s.errors
    )
    .map_err(io_failure)
}
