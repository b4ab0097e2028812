use serde_json::{json, Value};

use crate::error::CliError;

pub const TOOL: &str = "dball";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const PROVENANCE_PREFIX: &str = "# provenance: ";

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Json(Value),
    Csv { columns: Vec<&'static str>, rows: Vec<Vec<String>> },
}

/// A command's result. A `failure` is still written out, then turned into
/// exit code 3.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub inputs: Value,
    pub body: Body,
    pub failure: Option<String>,
    pub warnings: Vec<String>,
}

impl Artifact {
    pub fn json(inputs: Value, result: Value) -> Self {
        Self { inputs, body: Body::Json(result), failure: None, warnings: Vec::new() }
    }
}

/// No timestamps or host data, so identical runs give identical files.
pub fn provenance(command: &str, argv: &[String], threads: Option<usize>, inputs: &Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "core_version": VERSION,
        "command": command,
        "argv": argv,
        "threads": threads,
        "seed": Value::Null,
        "inputs": inputs,
    })
}

pub fn render(provenance: &Value, body: &Body) -> Result<String, CliError> {
    match body {
        Body::Json(result) => {
            let doc = json!({ "provenance": provenance, "result": result });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Numerical(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Body::Csv { columns, rows } => {
            let mut s = format!("# {TOOL} {VERSION} {}\n", provenance["command"].as_str().unwrap_or(""));
            s.push_str(PROVENANCE_PREFIX);
            s.push_str(&provenance.to_string());
            s.push('\n');
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns).map_err(|e| CliError::Output(e.into()))?;
            for r in rows {
                w.write_record(r).map_err(|e| CliError::Output(e.into()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Output(e.into_error()))?;
            s.push_str(&String::from_utf8_lossy(&bytes));
            Ok(s)
        }
    }
}

/// Provenance block of a file written by [`render`].
pub fn read_provenance(text: &str) -> Result<Value, CliError> {
    let bad = |why: &str| CliError::Input(format!("not a {TOOL} result file: {why}"));
    if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        return doc.get("provenance").cloned().ok_or_else(|| bad("no provenance block"));
    }
    let line = text.lines().find_map(|l| l.strip_prefix(PROVENANCE_PREFIX)).ok_or_else(|| bad("no provenance line"))?;
    serde_json::from_str(line).map_err(|e| bad(&e.to_string()))
}

/// Shortest round-trip decimal, as used for CSV cells.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
