use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::time::{SystemTime, UNIX_EPOCH};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to rerun a command. `argv` excludes the output flags,
/// which never change report contents, and always carries the seed.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Manifest {
    pub command: String,
    pub argv: Vec<String>,
    pub params: Map<String, Value>,
    pub version: String,
    pub timestamp: u64,
}

impl Manifest {
    pub fn new(command: &str, argv: Vec<String>, params: Map<String, Value>) -> Manifest {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Manifest {
            command: command.to_string(),
            argv,
            params,
            version: VERSION.to_string(),
            timestamp,
        }
    }

    /// Hex SHA-256 of the manifest without its timestamp.
    pub fn hash(&self) -> String {
        let body = serde_json::json!({
            "command": self.command,
            "argv": self.argv,
            "params": self.params,
            "version": self.version,
        });
        let digest = Sha256::digest(body.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Base name for report files: `detlab-ord-<12 hex digits>`.
    pub fn file_stem(&self) -> String {
        format!("{}-{}", self.command.replace(' ', "-"), &self.hash()[..12])
    }
}

/// Header plus rows, written with RFC 4180 quoting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// The outcome of one command before it is tied to a manifest.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub params: Map<String, Value>,
    pub result: Value,
    pub table: Table,
    /// False when a checked property failed.
    pub pass: bool,
}

pub fn report_json(manifest: &Manifest, result: &Value) -> String {
    let doc = serde_json::json!({ "manifest": manifest, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Compact float formatting: six decimals with trailing zeros removed.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Drop `manifest.timestamp` from a JSON report, for comparisons.
pub fn strip_timestamp(report: &str) -> Value {
    let mut v: Value = serde_json::from_str(report).expect("valid report JSON");
    if let Some(m) = v.get_mut("manifest").and_then(Value::as_object_mut) {
        m.remove("timestamp");
    }
    v
}
