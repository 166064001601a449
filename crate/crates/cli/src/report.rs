use serde_json::{Map, Value};
use thresholds_core::arith::{decimal, render};
use thresholds_core::{Rational, ThresholdResult, ThresholdValue};

use crate::config::Format;

pub const SCHEMA: u64 = 1;

/// A finished report; JSON keys are kept sorted so output is byte-stable.
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub text: String,
    pub certified: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            text: String::new(),
            certified: true,
        }
    }

    pub fn field(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut root = self.fields.clone();
                root.insert("schema".into(), Value::from(SCHEMA));
                root.insert("command".into(), Value::from(self.command));
                root.insert("certified".into(), Value::from(self.certified));
                let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("plain values");
                s.push('\n');
                s
            }
        }
    }
}

pub fn rat(x: &Rational) -> Value {
    Value::from(render(x))
}

/// Integers are written as strings too, like every other exact number.
pub fn num(x: impl ToString) -> Value {
    Value::from(x.to_string())
}

/// Decimal approximation, only ever emitted under an `approx` key.
pub fn approx(x: &Rational) -> Value {
    Value::from(decimal(x, 10))
}

pub fn threshold(t: &ThresholdResult) -> Value {
    let mut m = Map::new();
    match &t.value {
        ThresholdValue::Exact(v) => {
            m.insert("exact".into(), rat(v));
        }
        ThresholdValue::Interval { lo, hi } => {
            m.insert("lo".into(), rat(lo));
            m.insert("hi".into(), rat(hi));
        }
    }
    m.insert("certified".into(), Value::from(t.certified));
    m.insert("method".into(), Value::from(t.method.as_str()));
    Value::Object(m)
}
