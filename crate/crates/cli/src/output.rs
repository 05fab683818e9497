use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

pub enum Payload {
    /// A single record; `text` is the human view.
    Record { json: Value, text: String },
    Table {
        headers: Vec<&'static str>,
        rows: Vec<Vec<String>>,
        json: Value,
    },
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit(format: Format, payload: &Payload) {
    match (format, payload) {
        (Format::Json, Payload::Record { json, .. }) | (Format::Json, Payload::Table { json, .. }) => {
            println!("{}", serde_json::to_string_pretty(json).expect("serializable"));
        }
        (Format::Text, Payload::Record { text, .. }) => println!("{text}"),
        (Format::Csv, Payload::Record { json, .. }) => {
            println!("key,value");
            if let Value::Object(map) = json {
                for (k, v) in map {
                    println!("{}", csv_line(&[k.clone(), scalar(v)]));
                }
            }
        }
        (Format::Csv, Payload::Table { headers, rows, .. }) => {
            let h: Vec<String> = headers.iter().map(|s| s.to_string()).collect();
            println!("{}", csv_line(&h));
            for r in rows {
                println!("{}", csv_line(r));
            }
        }
        (Format::Text, Payload::Table { headers, rows, .. }) => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            println!("{}", line(headers.to_vec()));
            for r in rows {
                println!("{}", line(r.iter().map(String::as_str).collect()));
            }
        }
    }
}

pub fn report_usage(message: &str) {
    eprintln!("{}", json!({ "error": "usage", "message": message }));
}

pub fn report_error(e: &CliError) {
    let mut v = json!({ "error": e.kind(), "message": e.message() });
    if let CliError::Domain(trigonal::Error::Parse { offset, .. }) = e {
        v["offset"] = json!(offset);
    }
    eprintln!("{v}");
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Input(String),
    Domain(trigonal::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Input(_) => "input",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn message(&self) -> String {
        self.to_string()
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Input(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<trigonal::Error> for CliError {
    fn from(e: trigonal::Error) -> Self {
        CliError::Domain(e)
    }
}
