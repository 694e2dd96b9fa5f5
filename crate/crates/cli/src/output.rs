//! Row emission: RFC-4180-style CSV with `#` provenance comments, or JSON
//! lines. All floats print with 12 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde_json::Value;
use tzl_core::Result;

use crate::config::OutputFormat;

/// 12-significant-digit float form used in every CSV cell.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Quote a CSV field that contains commas.
pub fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub struct Emitter {
    format: OutputFormat,
    out: Box<dyn Write>,
}

impl Emitter {
    pub fn new(format: OutputFormat, output: &str) -> Result<Self> {
        let out: Box<dyn Write> = if output == "-" {
            Box::new(BufWriter::new(io::stdout()))
        } else {
            Box::new(BufWriter::new(File::create(output)?))
        };
        Ok(Emitter { format, out })
    }

    /// Provenance or annotation line; CSV only, silently dropped for JSON.
    pub fn comment(&mut self, text: &str) -> Result<()> {
        if self.format == OutputFormat::Csv {
            writeln!(self.out, "# {text}")?;
        }
        Ok(())
    }

    /// Column header line; CSV only.
    pub fn header(&mut self, columns: &str) -> Result<()> {
        if self.format == OutputFormat::Csv {
            writeln!(self.out, "{columns}")?;
        }
        Ok(())
    }

    /// One data row, pre-rendered for CSV and as a JSON value.
    pub fn row(&mut self, csv: &str, json: Value) -> Result<()> {
        match self.format {
            OutputFormat::Csv => writeln!(self.out, "{csv}")?,
            OutputFormat::Json => writeln!(self.out, "{json}")?,
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}
