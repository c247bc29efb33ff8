use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use scrollflex_core::ScrollPoint;

/// One command's answer, renderable as aligned text or as a JSON document.
pub struct Output {
    pub verb: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub certificate: Option<Value>,
    lines: Vec<Line>,
    /// Nonzero for results that are correctness alarms.
    pub exit: u8,
}

enum Line {
    Row(String, String),
    Text(String),
}

impl Output {
    pub fn new(verb: &'static str) -> Self {
        Self {
            verb,
            inputs: Map::new(),
            result: Map::new(),
            certificate: None,
            lines: Vec::new(),
            exit: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    pub fn row(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.lines
            .push(Line::Row(key.to_string(), value.to_string()));
        self
    }

    pub fn text(&mut self, line: impl Into<String>) -> &mut Self {
        self.lines.push(Line::Text(line.into()));
        self
    }

    pub fn render_text(&self) -> String {
        let width = self
            .lines
            .iter()
            .filter_map(|l| match l {
                Line::Row(k, _) => Some(k.len()),
                Line::Text(_) => None,
            })
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Row(k, v) => out.push_str(&format!("{k:<width$}  {v}\n")),
                Line::Text(t) => {
                    out.push_str(t);
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(1));
        doc.insert("verb".into(), json!(self.verb));
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("result".into(), Value::Object(self.result.clone()));
        if let Some(c) = &self.certificate {
            doc.insert("certificate".into(), c.clone());
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("serialisable") + "\n"
    }
}

/// A JSON number when the rational is a small integer, otherwise its text.
pub fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(q.to_string())
}

/// A numeric answer tagged with the formula or oracle that produced it.
pub fn answer(value: Value, source: &str) -> Value {
    json!({ "value": value, "source": source })
}

pub fn point(p: &ScrollPoint) -> Value {
    json!({
        "base_chart": match p.base {
            scrollflex_core::BaseChart::Zero => "0",
            scrollflex_core::BaseChart::Infinity => "infinity",
        },
        "u": rational(&p.u),
        "fiber_chart": p.fiber_chart + 1,
        "w": p.fiber_coords().iter().map(rational).collect::<Vec<_>>(),
    })
}
