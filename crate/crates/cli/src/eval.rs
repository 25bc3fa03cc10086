//! Single evaluations and their output.

use clap::ValueEnum;
use num_complex::Complex64;
use pearcey::{evaluate, evaluate_method, Error, EvalResult64, MethodTag, SelectorPolicy};
use serde::Deserialize;
use serde_json::{json, Number, Value};

use crate::format::{complex_sig, full, sig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Smallx,
    Largex,
    Largexy,
    Series,
    Quad,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s.trim(), true).map_err(|_| format!("unknown method '{}'", s.trim()))
    }

    fn tag(self) -> Option<MethodTag> {
        match self {
            Method::Auto => None,
            Method::Smallx => Some(MethodTag::SmallX),
            Method::Largex => Some(MethodTag::LargeX),
            Method::Largexy => Some(MethodTag::LargeXY),
            Method::Series => Some(MethodTag::ConvergentSeries),
            Method::Quad => Some(MethodTag::Quadrature),
        }
    }
}

pub fn run(x: Complex64, y: Complex64, method: Method, terms: Option<usize>, policy: &SelectorPolicy) -> Result<EvalResult64, Error> {
    match method.tag() {
        None => evaluate(x, y, policy),
        Some(tag) => evaluate_method(x, y, tag, terms, policy),
    }
}

/// Exit status for a failed evaluation: 2 when the method does not apply at
/// the point, 1 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Region { .. } => 2,
        _ => 1,
    }
}

fn number(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(full(v).parse::<Number>().expect("finite float"))
    } else {
        Value::Null
    }
}

fn pair(z: Complex64) -> Value {
    Value::Array(vec![number(z.re), number(z.im)])
}

pub fn to_json(x: Complex64, y: Complex64, r: &EvalResult64) -> Value {
    json!({
        "x": pair(x),
        "y": pair(y),
        "value": pair(r.value),
        "method": r.method.as_str(),
        "terms": r.terms_used,
        "error_estimate": r.error_estimate.map_or(Value::Null, number),
        "warnings": r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}

pub fn to_text(x: Complex64, y: Complex64, r: &EvalResult64, digits: usize) -> String {
    let estimate = match (r.error_estimate, r.oracle_digits) {
        (Some(e), _) => sig(e, digits),
        (None, Some(d)) => format!("oracle {d} digits"),
        (None, None) => "none".into(),
    };
    let mut line = format!(
        "P({}, {}) = {}  method={} terms={} error_estimate={}",
        complex_sig(x, digits),
        complex_sig(y, digits),
        complex_sig(r.value, digits),
        r.method,
        r.terms_used,
        estimate
    );
    for w in &r.warnings {
        line.push_str(&format!(" warning={w}"));
    }
    line
}
