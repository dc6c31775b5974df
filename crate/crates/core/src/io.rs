//! CSV and NDJSON persistence for signals.
//!
//! CSV input: `.` decimal point, optional header row, one column (single
//! channel) or several named columns. The header is detected when any cell
//! of the first record does not parse as a number. Row numbers in errors are
//! 1-based file line numbers.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signal::Signal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    /// Integers select by zero-based index, anything else by header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, column: &ColumnSelector) -> Result<Signal<T>> {
    let path = path.as_ref();
    read_csv(open(path)?, path, column)
}

pub(crate) fn parse_cell<T: Scalar>(cell: &str) -> Option<T> {
    let v: f64 = cell.trim().parse().ok()?;
    v.is_finite().then(|| T::lit(v))
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Reads a signal column from any CSV source; `origin` names it in errors.
pub fn read_csv<T: Scalar, R: Read>(
    reader: R,
    origin: &Path,
    column: &ColumnSelector,
) -> Result<Signal<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records().peekable();

    let first = match records.peek() {
        None => {
            return Err(Error::NoData {
                path: origin.into(),
            })
        }
        Some(Err(_)) => {
            let e = records.next().unwrap().unwrap_err();
            return Err(csv_err(origin, e));
        }
        Some(Ok(rec)) => rec.clone(),
    };
    let has_header = first.iter().any(|c| c.parse::<f64>().is_err());

    let index = match column {
        ColumnSelector::Index(i) => *i,
        ColumnSelector::Name(name) => {
            if !has_header {
                return Err(Error::Format {
                    path: origin.into(),
                    message: format!("column {name:?} requested but file has no header"),
                });
            }
            first
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::Format {
                    path: origin.into(),
                    message: format!("no column named {name:?}"),
                })?
        }
    };
    if has_header {
        records.next();
    }

    let mut samples = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_err(origin, e))?;
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let cell = rec.get(index).ok_or_else(|| Error::Format {
            path: origin.into(),
            message: format!("row {row}: missing column {index}"),
        })?;
        let v = parse_cell(cell).ok_or_else(|| Error::Parse {
            path: origin.into(),
            row,
            value: cell.to_string(),
        })?;
        samples.push(v);
    }
    if samples.is_empty() {
        return Err(Error::NoData {
            path: origin.into(),
        });
    }
    Signal::new(samples)
}

/// Writes a single `value` column using enough significant digits for an
/// exact round-trip.
pub fn save_csv<T: Scalar>(signal: &Signal<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_csv(signal, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

pub fn write_csv<T: Scalar, W: Write>(signal: &Signal<T>, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "value")?;
    for v in signal.iter() {
        writeln!(w, "{}", format_round_trip(v))?;
    }
    Ok(())
}

pub fn format_round_trip<T: Scalar>(v: T) -> String {
    format!("{:.*e}", T::ROUND_TRIP_DIGITS - 1, v)
}

/// NDJSON line shape: `{"n": N, "dt": sample_period, "samples": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SignalRecord<T> {
    pub n: usize,
    pub dt: T,
    pub samples: Vec<T>,
}

impl<T: Scalar> From<&Signal<T>> for SignalRecord<T> {
    fn from(s: &Signal<T>) -> Self {
        Self {
            n: s.len(),
            dt: s.sample_period(),
            samples: s.samples().to_vec(),
        }
    }
}

impl<T: Scalar> TryFrom<SignalRecord<T>> for Signal<T> {
    type Error = Error;

    fn try_from(rec: SignalRecord<T>) -> Result<Self> {
        crate::error::ensure_same_len(rec.n, rec.samples.len())?;
        Signal::with_sample_period(rec.samples, rec.dt)
    }
}

pub fn to_ndjson_line<T: Scalar>(signal: &Signal<T>) -> Result<String> {
    Ok(serde_json::to_string(&SignalRecord::from(signal))?)
}

pub fn from_ndjson_line<T: Scalar>(line: &str) -> Result<Signal<T>> {
    let rec: SignalRecord<T> = serde_json::from_str(line)?;
    rec.try_into()
}
