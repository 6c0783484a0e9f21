//! Machine-readable reports.
//!
//! Every report is a JSON object carrying `schema_version` and `report`.
//! The CSV form has one line per entry of the `rows` array when there is
//! one, or a single line of the top-level fields otherwise. Nested values
//! are embedded as JSON text.

use serde_json::{json, Map, Value};

use crate::config::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new(kind: &str) -> Self {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("report".into(), json!(kind));
        Report(m)
    }

    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.into(), v.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.0).expect("serialisable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }

    fn to_csv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        match self.0.get("rows").and_then(Value::as_array) {
            Some(rows) => {
                let mut header: Vec<String> = vec!["schema_version".into(), "report".into()];
                if let Some(Value::Object(first)) = rows.first() {
                    header.extend(first.keys().cloned());
                }
                w.write_record(&header).expect("in-memory write");
                for r in rows {
                    let mut line = vec![SCHEMA_VERSION.to_string(), cell(&self.0["report"])];
                    line.extend(header[2..].iter().map(|k| r.get(k).map(cell).unwrap_or_default()));
                    w.write_record(&line).expect("in-memory write");
                }
            }
            None => {
                w.write_record(self.0.keys()).expect("in-memory write");
                w.write_record(self.0.values().map(cell)).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_forms() {
        let r = Report::new("x").set("a", 1).set("b", "s,t");
        assert_eq!(r.render(Format::Csv), "a,b,report,schema_version\n1,\"s,t\",x,1\n");
        let r = Report::new("t").set("rows", json!([{"m": 1, "h": 6}, {"m": 2, "h": 9}]));
        assert_eq!(r.render(Format::Csv), "schema_version,report,h,m\n1,t,6,1\n1,t,9,2\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["schema_version"], 1);
    }
}
