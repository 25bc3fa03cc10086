//! Batch evaluation of CSV or JSON-lines records.

use std::io::Write;

use num_complex::Complex64;
use pearcey::SelectorPolicy;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::eval::{run, Method};
use crate::format::full;
use crate::literal::parse_complex;

pub const HEADER: [&str; 9] = [
    "x",
    "y",
    "value_re",
    "value_im",
    "method",
    "terms",
    "error_estimate",
    "warning_count",
    "error",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub line: usize,
    pub x: Complex64,
    pub y: Complex64,
    pub method: Method,
    pub terms: Option<usize>,
}

/// One input line: a record, or the raw cells and the reason it was rejected.
pub type Parsed = Result<Record, (usize, String, String, String)>;

/// Reads records from `text`. JSON-lines is chosen when the first non-blank
/// character is `{`; otherwise the text is CSV with a mandatory header.
pub fn parse_input(text: &str) -> Result<Vec<Parsed>, String> {
    if text.trim_start().starts_with('{') {
        Ok(parse_json_lines(text))
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> Result<Vec<Parsed>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| format!("unreadable header: {e}"))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(xc), Some(yc)) = (col("x"), col("y")) else {
        return Err("header must name columns x and y".into());
    };
    let (mc, tc) = (col("method"), col("terms"));
    let mut out = Vec::new();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line() as usize);
                out.push(Err((line, String::new(), String::new(), format!("line {line}: {e}"))));
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line() as usize);
        let cell = |i: Option<usize>| i.and_then(|i| row.get(i)).unwrap_or("").to_string();
        let (xs, ys) = (cell(Some(xc)), cell(Some(yc)));
        let parsed = (|| -> Result<Record, String> {
            let x = parse_complex(&xs).map_err(|e| format!("x: {e}"))?;
            let y = parse_complex(&ys).map_err(|e| format!("y: {e}"))?;
            let m = cell(mc);
            let method = if m.is_empty() { Method::Auto } else { Method::parse(&m)? };
            let t = cell(tc);
            let terms = if t.is_empty() {
                None
            } else {
                Some(t.parse::<usize>().map_err(|_| format!("invalid terms '{t}'"))?)
            };
            Ok(Record { line, x, y, method, terms })
        })();
        out.push(parsed.map_err(|e| (line, xs, ys, format!("line {line}: {e}"))));
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    x: Value,
    y: Value,
    #[serde(default)]
    method: Option<Method>,
    #[serde(default)]
    terms: Option<usize>,
}

fn json_complex(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::String(s) => parse_complex(s),
        Value::Number(n) => n.as_f64().map(|r| Complex64::new(r, 0.0)).ok_or_else(|| format!("bad number {n}")),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(format!("expected [re, im], got {v}")),
        },
        _ => Err(format!("expected a complex literal or [re, im], got {v}")),
    }
}

fn parse_json_lines(text: &str) -> Vec<Parsed> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let line = i + 1;
            let fail = |msg: String| (line, String::new(), String::new(), format!("line {line}: {msg}"));
            let r: JsonRecord = serde_json::from_str(l).map_err(|e| fail(e.to_string()))?;
            let raw = |v: &Value| v.as_str().map_or_else(|| v.to_string(), str::to_string);
            let x = json_complex(&r.x).map_err(|e| (line, raw(&r.x), raw(&r.y), format!("line {line}: x: {e}")))?;
            let y = json_complex(&r.y).map_err(|e| (line, raw(&r.x), raw(&r.y), format!("line {line}: y: {e}")))?;
            Ok(Record {
                line,
                x,
                y,
                method: r.method.unwrap_or_default(),
                terms: r.terms,
            })
        })
        .collect()
}

/// Evaluates every record (in parallel) and writes one output row per input
/// record, in input order. Returns whether every row succeeded.
pub fn process<W: Write>(records: &[Parsed], policy: &SelectorPolicy, out: W) -> Result<bool, String> {
    let rows: Vec<([String; 9], bool)> = records
        .par_iter()
        .map(|rec| match rec {
            Err((_, xs, ys, msg)) => (row(xs.clone(), ys.clone(), None, msg.clone()), false),
            Ok(r) => {
                let (xs, ys) = (crate::literal::render_complex(r.x), crate::literal::render_complex(r.y));
                match run(r.x, r.y, r.method, r.terms, policy) {
                    Ok(v) => (row(xs, ys, Some(&v), String::new()), true),
                    Err(e) => (row(xs, ys, None, format!("line {}: {e}", r.line)), false),
                }
            }
        })
        .collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(|e| e.to_string())?;
    for (r, _) in &rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;
    Ok(rows.iter().all(|(_, ok)| *ok))
}

fn row(xs: String, ys: String, r: Option<&pearcey::EvalResult64>, error: String) -> [String; 9] {
    match r {
        Some(v) => [
            xs,
            ys,
            full(v.value.re),
            full(v.value.im),
            v.method.as_str().to_string(),
            v.terms_used.to_string(),
            v.error_estimate.map_or(String::new(), full),
            v.warnings.len().to_string(),
            error,
        ],
        None => [xs, ys, String::new(), String::new(), String::new(), String::new(), String::new(), String::new(), error],
    }
}
