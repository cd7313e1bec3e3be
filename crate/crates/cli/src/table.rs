use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::settings::{CliError, CliResult};

/// Rectangular numeric table; `None` cells are written empty.
///
/// Floats use Rust's `Display`, which is the shortest string that parses
/// back to the same bits.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) -> CliResult<()> {
        if row.len() != self.header.len() {
            return Err(CliError::Io(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_values(&mut self, row: impl IntoIterator<Item = f64>) -> CliResult<()> {
        self.push(row.into_iter().map(Some).collect())
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(BufWriter::new(File::create(path)?));
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.map_or(String::new(), format_float)))?;
        }
        w.flush()?;
        Ok(())
    }

    #[cfg(test)]
    pub fn read(path: &Path) -> CliResult<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| {
                rec?.iter()
                    .map(|c| {
                        if c.is_empty() {
                            Ok(None)
                        } else {
                            c.parse().map(Some).map_err(|e| CliError::Io(format!("bad cell '{c}': {e}")))
                        }
                    })
                    .collect()
            })
            .collect::<CliResult<_>>()?;
        Ok(Self { header, rows })
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v}")
}
