//! Output plumbing shared by the CLI: JSON envelope, 12-significant-digit
//! number formatting and CSV tables.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::combinatorics::Rational;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const NUMERIC_FORMAT: &str = "sig12";

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

/// Text form with 12 significant digits and no trailing zeros.
pub fn fmt_sig12(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig12(v);
    if r == 0.0 {
        return "0".into();
    }
    let exp = r.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{r:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{r:.11e}")
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rewrites every float in `v` to 12 significant digits. Objects are kept
/// sorted because serde_json's map is ordered by key.
pub fn sig12_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let f = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64(round_sig12(f)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sig12_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, sig12_value(v))).collect()),
        other => other,
    }
}

/// Serializes anything to a sig12-normalized JSON value.
pub fn to_value<T: Serialize>(t: &T) -> Value {
    sig12_value(serde_json::to_value(t).expect("report types serialize"))
}

/// The single JSON object printed per invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub tool_version: String,
    pub numeric_format: String,
}

impl OutputEnvelope {
    pub fn new(command: &str, parameters: Map<String, Value>, results: Value) -> Self {
        OutputEnvelope {
            command: command.into(),
            parameters,
            results,
            tool_version: TOOL_VERSION.into(),
            numeric_format: NUMERIC_FORMAT.into(),
        }
    }

    /// Pretty JSON with sorted keys and sig12 floats.
    pub fn to_json(&self) -> String {
        let value = to_value(self);
        serde_json::to_string_pretty(&value).expect("JSON value serializes")
    }
}

/// A CSV table; the header is always emitted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// One CSV cell.
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(i128::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&Rational> for Cell {
    fn from(v: &Rational) -> Self {
        Cell::Text(fmt_rational(v))
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => fmt_sig12(f),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
            Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
            Cell::Text(t) => t,
        }
    }
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "CSV row width");
        self.rows.push(row.into_iter().map(Cell::render).collect());
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
