//! Text and JSON output accumulation.

use serde_json::{json, Map, Value};

/// Seven significant digits.
pub fn sig7(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (6 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Collects a JSON object and text lines; only one of them is printed.
pub struct Output {
    json: bool,
    doc: Map<String, Value>,
    lines: Vec<String>,
}

impl Output {
    pub fn new(json: bool) -> Self {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(1));
        Output {
            json,
            doc,
            lines: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.doc.insert(key.into(), v);
    }

    pub fn line(&mut self, text: &str) {
        self.lines.push(text.to_string());
    }

    /// A named scalar shown as `key=value` in text mode.
    pub fn field(&mut self, key: &str, v: usize) {
        self.set(key, json!(v));
        self.line(&format!("{key}={v}"));
    }

    pub fn value(&mut self, v: Value, text: String) {
        self.set("value", v);
        self.line(&text);
    }

    pub fn witness(&mut self, v: Value, text: String) {
        self.set("witness", v);
        self.line(&text);
    }

    pub fn finish(self) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&Value::Object(self.doc)).expect("json"));
        } else {
            for l in self.lines {
                println!("{l}");
            }
        }
    }
}
