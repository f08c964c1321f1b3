//! Rendering of results as text, JSON or CSV.

use std::io::{self, Write};

use qhumbert::identities::{Status, VerifyReport};
use qhumbert::C64;
use serde_json::{Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Fixed 17-significant-digit rendering, kept verbatim in the JSON text.
pub fn fixed(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn number(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    Value::Number(fixed(v).parse::<Number>().expect("scientific literal is valid JSON"))
}

pub fn complex(v: &C64) -> Value {
    object([("re", number(v.re)), ("im", number(v.im))])
}

pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn write_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerifyReport]) -> Self {
        let mut s = Self::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedConstraint => s.skipped += 1,
            }
        }
        s
    }

    fn json(&self) -> Value {
        object([
            ("pass", self.pass.into()),
            ("fail", self.fail.into()),
            ("skipped", self.skipped.into()),
        ])
    }
}

fn report_json(r: &VerifyReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if let (Value::Object(map), Some(res)) = (&mut v, r.residual) {
        map.insert("residual".into(), number(res));
    }
    v
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::SkippedConstraint => "skipped-constraint",
    }
}

const REPORT_HEADER: [&str; 19] = [
    "id", "mode", "q", "q1", "a", "b", "c", "x", "y", "degree", "status", "residual", "mismatch_l", "mismatch_k",
    "mismatch_lhs", "mismatch_rhs", "terms_used", "error_class", "diagnostic",
];

fn report_row(r: &VerifyReport) -> Vec<String> {
    let p = &r.point;
    let m = r.first_mismatch.as_ref();
    let error_class = r
        .error_class
        .map(|c| serde_json::to_value(c).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default());
    vec![
        r.id.clone(),
        format!("{:?}", r.mode).to_lowercase(),
        p.q.clone(),
        p.q1.clone(),
        p.a.clone(),
        p.b.clone(),
        p.c.clone(),
        p.x.clone().unwrap_or_default(),
        p.y.clone().unwrap_or_default(),
        p.degree.map(|d| d.to_string()).unwrap_or_default(),
        status_name(r.status).to_string(),
        r.residual.map(fixed).unwrap_or_default(),
        m.map(|m| m.l.to_string()).unwrap_or_default(),
        m.map(|m| m.k.to_string()).unwrap_or_default(),
        m.map(|m| m.lhs.clone()).unwrap_or_default(),
        m.map(|m| m.rhs.clone()).unwrap_or_default(),
        r.terms_used.to_string(),
        error_class.unwrap_or_default(),
        r.diagnostic.clone().unwrap_or_default(),
    ]
}

pub fn write_reports(
    out: &mut dyn Write,
    format: Format,
    run: Value,
    reports: &[VerifyReport],
) -> io::Result<()> {
    let summary = Summary::of(reports);
    match format {
        Format::Json => {
            let doc = object([
                ("run", run),
                ("reports", Value::Array(reports.iter().map(report_json).collect())),
                ("summary", summary.json()),
            ]);
            write_json(out, &doc)
        }
        Format::Csv => write_csv(out, &REPORT_HEADER, reports.iter().map(report_row)),
        Format::Text => {
            for r in reports {
                let p = &r.point;
                let mut line = format!(
                    "{:<8} {:<18} q={} q1={} a={} b={} c={}",
                    r.id,
                    status_name(r.status),
                    p.q,
                    p.q1,
                    p.a,
                    p.b,
                    p.c
                );
                if let (Some(x), Some(y)) = (&p.x, &p.y) {
                    line += &format!(" x={x} y={y}");
                }
                if let Some(res) = r.residual {
                    line += &format!(" residual={res:.3e}");
                }
                if let Some(m) = &r.first_mismatch {
                    line += &format!(" mismatch@({},{}) {} != {}", m.l, m.k, m.lhs, m.rhs);
                }
                if let Some(d) = &r.diagnostic {
                    line += &format!(" ({d})");
                }
                writeln!(out, "{line}")?;
            }
            writeln!(out, "summary: {} pass, {} fail, {} skipped", summary.pass, summary.fail, summary.skipped)
        }
    }
}

pub fn write_csv<I>(out: &mut dyn Write, header: &[&str], rows: I) -> io::Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Plain whitespace-separated table.
pub fn write_table<I>(out: &mut dyn Write, header: &[&str], rows: I) -> io::Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    writeln!(out, "{}", header.join(" "))?;
    for row in rows {
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}
