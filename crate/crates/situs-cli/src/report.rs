use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// A command's result. Keys keep insertion order, so equal inputs give
/// byte-identical output apart from `timing_ms`.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub verdict: bool,
    inputs: Map<String, Value>,
    fields: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), verdict: false, inputs: Map::new(), fields: Map::new() }
    }

    /// Records an input file by its digest.
    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), Value::String(digest(bytes)));
    }

    /// Records a scalar argument.
    pub fn arg(&mut self, name: &str, value: impl Serialize) {
        self.inputs.insert(name.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.fields.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn verdict(mut self, v: bool) -> Self {
        self.verdict = v;
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn to_value(&self, timing: Option<Duration>) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        out.insert("verdict".into(), Value::Bool(self.verdict));
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        if let Some(t) = timing {
            out.insert("timing_ms".into(), Value::from(t.as_millis() as u64));
        }
        Value::Object(out)
    }

    pub fn render(&self, format: Format, timing: Option<Duration>) -> String {
        let v = self.to_value(timing);
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&v).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for (k, v) in v.as_object().expect("object") {
                    let shown = match v {
                        Value::String(x) => x.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k}: {shown}\n"));
                }
                s
            }
        }
    }
}
