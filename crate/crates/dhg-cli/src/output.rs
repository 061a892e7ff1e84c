//! CSV and JSON emission with deterministic, locale-independent formatting.

use std::io::Write;
use std::path::PathBuf;

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal RFC-4180-style writer: fields containing separators or quotes
/// are quoted and inner quotes doubled (numeric output never needs it).
pub struct CsvWriter {
    out: Box<dyn Write>,
}

impl CsvWriter {
    pub fn create(path: Option<&PathBuf>) -> Result<Self, String> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(
                std::fs::File::create(p)
                    .map_err(|e| format!("cannot create {}: {e}", p.display()))?,
            ),
            None => Box::new(std::io::stdout()),
        };
        Ok(CsvWriter { out })
    }

    pub fn record<S: AsRef<str>>(&mut self, fields: &[S]) -> Result<(), String> {
        let quoted: Vec<String> = fields
            .iter()
            .map(|f| {
                let f = f.as_ref();
                if f.contains(',') || f.contains('"') || f.contains('\n') {
                    format!("\"{}\"", f.replace('"', "\"\""))
                } else {
                    f.to_string()
                }
            })
            .collect();
        writeln!(self.out, "{}", quoted.join(",")).map_err(|e| e.to_string())
    }
}

/// Serialises a value as pretty JSON to the chosen sink.
pub fn emit_json<T: serde::Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
