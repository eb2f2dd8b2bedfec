use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA: &str = "minorlab.report/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    /// Every flag value and derived constant the run used.
    pub config: Map<String, Value>,
    pub metrics: Map<String, Value>,
    /// Table for CSV output; one object per row.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Map<String, Value>>,
    pub wall_clock_ms: u64,
    /// SHA-256 of each artifact written or read.
    pub artifacts: BTreeMap<String, String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: SCHEMA.into(),
            command: command.into(),
            config: Map::new(),
            metrics: Map::new(),
            rows: Vec::new(),
            wall_clock_ms: 0,
            artifacts: BTreeMap::new(),
        }
    }

    pub fn config(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.config
            .insert(key.into(), serde_json::to_value(value).expect("plain data"));
        self
    }

    pub fn metric(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.metrics
            .insert(key.into(), serde_json::to_value(value).expect("plain data"));
        self
    }

    pub fn artifact(&mut self, name: &str, bytes: &[u8]) {
        self.artifacts.insert(name.into(), hex::encode(Sha256::digest(bytes)));
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }

    /// The rows, or a single row of the scalar metrics.
    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let rows = if self.rows.is_empty() {
            let scalars: Map<String, Value> = self
                .metrics
                .iter()
                .filter(|(_, v)| !v.is_object() && !v.is_array())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            vec![scalars]
        } else {
            self.rows.clone()
        };
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<&String> = rows[0].keys().collect();
        w.write_record(&header)?;
        for row in &rows {
            w.write_record(header.iter().map(|k| match row.get(*k) {
                Some(Value::String(s)) => s.clone(),
                Some(Value::Null) | None => String::new(),
                Some(v) => v.to_string(),
            }))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Structural check of a serialized report.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(format!("schema must be `{SCHEMA}`"));
    }
    for key in ["command"] {
        if !obj.get(key).is_some_and(Value::is_string) {
            return Err(format!("`{key}` must be a string"));
        }
    }
    for key in ["config", "metrics", "artifacts"] {
        if !obj.get(key).is_some_and(Value::is_object) {
            return Err(format!("`{key}` must be an object"));
        }
    }
    if !obj.get("wall_clock_ms").is_some_and(Value::is_u64) {
        return Err("`wall_clock_ms` must be a non-negative integer".into());
    }
    if let Some(rows) = obj.get("rows") {
        let rows = rows.as_array().ok_or("`rows` must be an array")?;
        if !rows.iter().all(Value::is_object) {
            return Err("every row must be an object".into());
        }
    }
    if !obj["artifacts"]
        .as_object()
        .unwrap()
        .values()
        .all(|d| d.as_str().is_some_and(|s| s.len() == 64))
    {
        return Err("artifact digests must be SHA-256 hex".into());
    }
    Ok(())
}
