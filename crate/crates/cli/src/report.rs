//! JSON and TSV report files.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const TOOL: &str = "microframe";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: &'a T,
}

/// JSON document: tool, version and config followed by the fields of `body`.
pub fn to_json<T: Serialize>(config: &RunConfig, body: &T) -> CliResult<String> {
    let envelope = Envelope {
        tool: TOOL,
        version: VERSION,
        config,
        body,
    };
    let mut s = serde_json::to_string_pretty(&envelope)
        .map_err(|e| CliError::internal("report", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Column-named rows rendered as tab-separated text.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// `# key=value` provenance lines, the header, then one line per row.
    pub fn to_tsv(&self, config: &RunConfig) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool={TOOL}\n# version={VERSION}\n"));
        if let Ok(Value::Object(map)) = serde_json::to_value(config) {
            for (key, value) in map {
                out.push_str(&format!("# {key}={}\n", flat(&value)));
            }
        }
        out.push_str(&self.columns.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| clean(c)).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

fn flat(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => clean(s),
        Value::Array(items) => items.iter().map(flat).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn clean(cell: &str) -> String {
    cell.replace(['\t', '\n', '\r'], " ")
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes report files one at a time into the output directory.
pub struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    pub fn create(config: &RunConfig) -> CliResult<Outputs> {
        fs::create_dir_all(&config.out_dir).map_err(|e| {
            CliError::data(
                "write",
                format!("cannot create {}: {e}", config.out_dir.display()),
            )
        })?;
        Ok(Outputs {
            dir: config.out_dir.clone(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, file_name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(file_name);
        fs::write(&path, contents).map_err(|e| {
            CliError::data("write", format!("cannot write {}: {e}", path.display()))
        })?;
        log::info!("wrote {}", path.display());
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

/// A frame id usable as part of a file name.
pub fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
