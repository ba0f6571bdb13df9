use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use thiserror::Error;

use pathsys::json::{Json, JsonError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: JsonError },
    #[error(transparent)]
    Lib(#[from] pathsys::Error),
}

pub fn read_input<T: Json>(path: &Path) -> Result<T, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    T::from_json(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// A command's result: ordered key/value facts, an optional document, and
/// whether the checked property held.
#[derive(Debug)]
pub struct Report {
    pub ok: bool,
    facts: Vec<(String, Value)>,
    document: Option<(String, Value)>,
}

impl Report {
    pub fn new(ok: bool) -> Report {
        Report {
            ok,
            facts: Vec::new(),
            document: None,
        }
    }

    pub fn fact(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.facts.push((key.to_string(), value.into()));
        self
    }

    pub fn document(mut self, key: &str, value: Value) -> Report {
        self.document = Some((key.to_string(), value));
        self
    }

    /// Appends another report's facts; the first document wins.
    pub fn merge(mut self, other: Report) -> Report {
        self.ok &= other.ok;
        self.facts.extend(other.facts);
        if self.document.is_none() {
            self.document = other.document;
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                let mut map = Map::new();
                map.insert("ok".into(), self.ok.into());
                for (k, v) in &self.facts {
                    map.insert(k.clone(), v.clone());
                }
                if let Some((k, v)) = &self.document {
                    map.insert(k.clone(), v.clone());
                }
                out = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
                out.push('\n');
            }
            Format::Text => {
                // A lone unnamed fact prints bare, e.g. a count.
                if let [(k, v)] = self.facts.as_slice() {
                    if k == "value" {
                        let _ = writeln!(out, "{}", plain(v));
                    }
                }
                if out.is_empty() {
                    for (k, v) in &self.facts {
                        let _ = writeln!(out, "{k}: {}", plain(v));
                    }
                }
                if let Some((_, v)) = &self.document {
                    let _ = writeln!(out, "{v}");
                }
            }
            Format::Tsv => {
                for (k, v) in &self.facts {
                    let _ = writeln!(out, "{k}\t{}", plain(v));
                }
                if let Some((k, v)) = &self.document {
                    let _ = writeln!(out, "{k}\t{}", fractions(v));
                }
            }
        }
        out
    }
}

/// Replaces every `{"num", "den"}` object with the string `"num/den"`.
fn fractions(v: &Value) -> Value {
    match v {
        Value::Object(map) if map.len() == 2 && map.contains_key("num") && map.contains_key("den") => {
            Value::String(format!("{}/{}", plain(&map["num"]), plain(&map["den"])))
        }
        Value::Object(map) => Value::Object(map.iter().map(|(k, x)| (k.clone(), fractions(x))).collect()),
        Value::Array(items) => Value::Array(items.iter().map(fractions).collect()),
        other => other.clone(),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        other => other.to_string(),
    }
}
