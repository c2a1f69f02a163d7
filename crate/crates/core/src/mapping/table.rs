use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use super::MappingError;

/// A CSV table with a header row. Empty cells are NULL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalTable {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl LogicalTable {
    pub fn new(name: impl Into<String>, header: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, MappingError> {
        let name = name.into();
        let err = |message: String| MappingError::Table {
            table: name.clone(),
            message,
        };
        for (i, h) in header.iter().enumerate() {
            if header[..i].contains(h) {
                return Err(err(format!("duplicate column '{h}'")));
            }
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != header.len() {
                return Err(err(format!(
                    "row {} has {} cells, header has {}",
                    i + 1,
                    r.len(),
                    header.len()
                )));
            }
        }
        Ok(Self { name, header, rows })
    }

    pub fn from_csv_reader(name: impl Into<String>, reader: impl Read) -> Result<Self, MappingError> {
        let name = name.into();
        let err = |e: csv::Error| MappingError::Table {
            table: name.clone(),
            message: e.to_string(),
        };
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let header: Vec<String> = rdr.headers().map_err(err)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            rows.push(rec.map_err(err)?.iter().map(str::to_string).collect());
        }
        Self::new(name, header, rows)
    }

    pub fn from_csv_str(name: impl Into<String>, text: &str) -> Result<Self, MappingError> {
        Self::from_csv_reader(name, text.as_bytes())
    }

    pub fn column_index(&self, column: &str) -> Option<usize> {
        self.header.iter().position(|h| h == column)
    }
}

/// Reads `{dir}/{name}.csv` for every name.
pub fn load_tables(dir: &Path, names: &[String]) -> Result<HashMap<String, LogicalTable>, MappingError> {
    let mut out = HashMap::new();
    for name in names {
        let path = dir.join(format!("{name}.csv"));
        if !path.exists() {
            return Err(MappingError::TableNotFound(name.clone()));
        }
        let file = std::fs::File::open(&path).map_err(|source| MappingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        out.insert(name.clone(), LogicalTable::from_csv_reader(name.clone(), file)?);
    }
    Ok(out)
}
