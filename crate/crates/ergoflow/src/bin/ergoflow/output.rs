//! Table assembly and serialization. Every command produces one table
//! with a fixed column set; tables go out as RFC-4180 CSV or as JSON
//! lines. Floats are printed with 17 significant digits so that emitted
//! values reparse bit-exactly.

use std::io::Write;
use std::path::PathBuf;

use ergoflow::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?}, expected \"csv\" or \"jsonl\""
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            // 16 fractional digits of scientific notation = 17 significant
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            Cell::Float(x) => serde_json::json!(x),
            Cell::Int(i) => serde_json::json!(i),
            Cell::Bool(b) => serde_json::json!(b),
            Cell::Text(t) => serde_json::json!(t),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

#[derive(Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: Option<&PathBuf>) -> Result<()> {
        let io_err = |e: std::io::Error| Error::InvalidArgument(format!("cannot write: {e}"));
        let mut sink: Box<dyn Write> = match out {
            Some(path) => Box::new(std::fs::File::create(path).map_err(io_err)?),
            None => Box::new(std::io::stdout().lock()),
        };
        match format {
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(sink);
                writer
                    .write_record(&self.columns)
                    .map_err(|e| Error::InvalidArgument(format!("cannot write: {e}")))?;
                for row in &self.rows {
                    let record: Vec<String> = row.iter().map(Cell::csv_field).collect();
                    writer
                        .write_record(&record)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write: {e}")))?;
                }
                writer.flush().map_err(io_err)?;
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let object: serde_json::Map<String, serde_json::Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(name, cell)| (name.to_string(), cell.json_value()))
                        .collect();
                    serde_json::to_writer(&mut sink, &object)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write: {e}")))?;
                    sink.write_all(b"\n").map_err(io_err)?;
                }
                sink.flush().map_err(io_err)?;
            }
        }
        Ok(())
    }
}
