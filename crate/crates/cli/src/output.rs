//! Deterministic CSV emission: fixed column order, fixed float formatting
//! (scientific notation, 12 significant digits), so identical configs
//! produce byte-identical output.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use photon_graviton::{Error, Result};

/// Render a float in scientific notation with 12 significant digits.
/// Negative zero is normalized so equal values format identically.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.11e}", x)
}

pub fn fmt_bool(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

/// A CSV document: optional `#` note lines, a header, data rows.
#[derive(Debug, Default)]
pub struct CsvDocument {
    pub notes: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvDocument {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Write rendered output to a file, or to standard output when no path is
/// given.
pub fn emit(document: &CsvDocument, out_path: Option<&Path>) -> Result<()> {
    emit_text(&document.render(), out_path)
}

/// Write raw text to a file, or to standard output when no path is given.
pub fn emit_text(text: &str, out_path: Option<&Path>) -> Result<()> {
    match out_path {
        Some(path) => {
            let mut file = File::create(path).map_err(|e| {
                Error::Resource(format!("cannot create {}: {}", path.display(), e))
            })?;
            file.write_all(text.as_bytes())
                .map_err(|e| Error::Resource(format!("cannot write {}: {}", path.display(), e)))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Resource(format!("cannot write to stdout: {}", e))),
    }
}
