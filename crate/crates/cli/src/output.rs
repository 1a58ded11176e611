//! Rendering of results as a single JSON object or an RFC 4180 CSV table.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

/// Keys whose integer values are exact counts and are emitted as strings.
const COUNT_KEYS: [&str; 3] = ["count", "ps_prime_count", "total_representations"];

/// A command's result plus, for list-like results, the field that becomes
/// the CSV body.
pub struct Report {
    pub body: Map<String, Value>,
    pub table: Option<Table>,
}

pub struct Table {
    pub key: &'static str,
    /// Column names for array or scalar rows; object rows carry their own.
    pub columns: &'static [&'static str],
}

impl Report {
    pub fn new(body: Value) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Report { body, table: None }
    }

    pub fn with_table(mut self, key: &'static str, columns: &'static [&'static str]) -> Self {
        self.table = Some(Table { key, columns });
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.to_string(), value.into());
    }
}

/// Reformats floats to 17 significant digits and turns exact counts into
/// strings, recursively.
pub fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("finite float");
            *n = Number::from_str(&format!("{x:.16e}")).expect("valid number literal");
        }
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => {
            for (key, item) in map.iter_mut() {
                if COUNT_KEYS.contains(&key.as_str()) {
                    stringify_integers(item);
                }
                normalize(item);
            }
        }
        _ => {}
    }
}

fn stringify_integers(v: &mut Value) {
    match v {
        Value::Number(n) if !n.is_f64() => *v = Value::String(n.to_string()),
        Value::Array(items) => items.iter_mut().for_each(stringify_integers),
        _ => {}
    }
}

pub fn render_json(meta: Map<String, Value>, report: Report) -> String {
    let mut out = meta;
    out.extend(report.body);
    let mut value = Value::Object(out);
    normalize(&mut value);
    let mut text = serde_json::to_string(&value).expect("serializable");
    text.push('\n');
    text
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

pub fn render_csv(meta: Map<String, Value>, report: Report) -> Result<String, String> {
    let mut body = Value::Object(report.body);
    normalize(&mut body);
    let mut meta = Value::Object(meta);
    normalize(&mut meta);
    let (Value::Object(body), Value::Object(meta)) = (body, meta) else {
        unreachable!("objects stay objects")
    };

    let mut header: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    match report.table {
        Some(t) => {
            let items = match body.get(t.key) {
                Some(Value::Array(items)) => items.clone(),
                _ => Vec::new(),
            };
            match items.first() {
                Some(Value::Object(first)) => header.extend(first.keys().cloned()),
                _ => header.extend(t.columns.iter().map(|c| c.to_string())),
            }
            for item in &items {
                rows.push(match item {
                    Value::Object(m) => header.iter().map(|h| m.get(h).map(cell).unwrap_or_default()).collect(),
                    Value::Array(parts) => parts.iter().map(cell).collect(),
                    scalar => vec![cell(scalar)],
                });
            }
        }
        None => {
            header.extend(body.keys().cloned());
            rows.push(body.values().map(cell).collect());
        }
    }
    let width = header.len();
    header.extend(meta.keys().cloned());
    let meta_cells: Vec<String> = meta.values().map(cell).collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| e.to_string())?;
    for mut row in rows {
        row.resize(width, String::new());
        row.extend(meta_cells.iter().cloned());
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}
