//! The JSON envelope shared by every command.

use serde::Serialize;
use serde_json::Value;

use crate::spec::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub instance: Option<String>,
    pub grid: Option<usize>,
    /// False when a checked property was violated.
    pub ok: bool,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, instance: Option<&str>, grid: Option<usize>, ok: bool, result: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            instance: instance.map(str::to_string),
            grid,
            ok,
            result,
        }
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered, so Value round-trips sort keys.
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }
}
