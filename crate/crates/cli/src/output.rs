//! CSV assembly and atomic file writes.
//!
//! CSV output follows RFC 4180: UTF-8, CRLF record separators, a mandatory
//! header row, '.' as the decimal separator.  Every file is written to a
//! temporary name in the target directory and renamed into place, so a
//! failed run never leaves a partial file.

use std::path::{Path, PathBuf};

use crate::CliError;

/// Shortest round-trip decimal form; empty string is reserved for absent
/// optional fields.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x}")
    }
}

/// Absent values become empty fields.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn escape_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\r') || field.contains('\n')
    {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// In-memory CSV table with a mandatory header.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    /// Raw lines (e.g. a JSON echo comment) placed before the header.
    preamble: Vec<String>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            preamble: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.preamble.push(format!("# {}", line.into()));
    }

    pub fn row(&mut self, fields: Vec<String>) {
        assert_eq!(fields.len(), self.header.len(), "row width mismatch");
        self.rows.push(fields);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            out.push_str(line);
            out.push_str("\r\n");
        }
        let encode = |fields: &[String]| {
            fields
                .iter()
                .map(|f| escape_field(f))
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&encode(&self.header));
        out.push_str("\r\n");
        for row in &self.rows {
            out.push_str(&encode(row));
            out.push_str("\r\n");
        }
        out
    }
}

/// Write bytes to `dir/name` through a temporary file and rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let final_path = dir.join(name);
    let tmp_path = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp_path, bytes).map_err(|e| {
        CliError::Config(format!("cannot write {}: {e}", tmp_path.display()))
    })?;
    std::fs::rename(&tmp_path, &final_path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp_path);
        CliError::Config(format!("cannot finalize {}: {e}", final_path.display()))
    })?;
    Ok(final_path)
}
