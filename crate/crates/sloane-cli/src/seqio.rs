//! OEIS b-file reading/writing, sequence diffing, and machine-readable
//! report emission (CSV with header row, or JSON lines with stable key
//! order).
//!
//! Values are always serialized in decimal. Digit vectors, where exported,
//! appear most-significant-first with an explicit base column.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;

use serde::Serialize;
use sloane_core::Natural;

#[derive(Debug)]
pub enum SeqIoError {
    Io(io::Error),
    /// A line that is neither blank, a comment, nor `<index> <value>`.
    Malformed { line: usize, content: String },
    /// Indices must increase by exactly one from the offset.
    NonContiguous { line: usize, expected: i64, found: i64 },
}

impl fmt::Display for SeqIoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqIoError::Io(e) => write!(f, "io error: {e}"),
            SeqIoError::Malformed { line, content } => {
                write!(f, "malformed b-file line {line}: {content:?}")
            }
            SeqIoError::NonContiguous { line, expected, found } => {
                write!(f, "non-contiguous index at line {line}: expected {expected}, found {found}")
            }
        }
    }
}

impl std::error::Error for SeqIoError {}

impl From<io::Error> for SeqIoError {
    fn from(e: io::Error) -> Self {
        SeqIoError::Io(e)
    }
}

/// An OEIS-style sequence file: contiguous `(index, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    offset: i64,
    entries: Vec<(i64, Natural)>,
}

impl BFile {
    /// Offset defaults to the first index present.
    pub fn new(entries: Vec<(i64, Natural)>) -> Result<Self, SeqIoError> {
        for (pos, w) in entries.windows(2).enumerate() {
            if w[1].0 != w[0].0 + 1 {
                return Err(SeqIoError::NonContiguous {
                    line: pos + 2,
                    expected: w[0].0 + 1,
                    found: w[1].0,
                });
            }
        }
        let offset = entries.first().map(|e| e.0).unwrap_or(0);
        Ok(BFile { offset, entries })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn entries(&self) -> &[(i64, Natural)] {
        &self.entries
    }

    pub fn value_at(&self, index: i64) -> Option<&Natural> {
        if self.entries.is_empty() || index < self.offset {
            return None;
        }
        self.entries.get((index - self.offset) as usize).map(|e| &e.1)
    }

    pub fn last_index(&self) -> Option<i64> {
        self.entries.last().map(|e| e.0)
    }
}

/// Parses `<index> <value>` lines; `#` comments and blank lines are
/// ignored. Indices must be contiguous.
pub fn parse_bfile(reader: impl BufRead) -> Result<BFile, SeqIoError> {
    let mut entries: Vec<(i64, Natural)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(SeqIoError::Malformed { line: lineno, content: line.clone() });
        };
        let index: i64 = idx
            .parse()
            .map_err(|_| SeqIoError::Malformed { line: lineno, content: line.clone() })?;
        let value: Natural = val
            .parse()
            .map_err(|_| SeqIoError::Malformed { line: lineno, content: line.clone() })?;
        if let Some(&(prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(SeqIoError::NonContiguous {
                    line: lineno,
                    expected: prev + 1,
                    found: index,
                });
            }
        }
        entries.push((index, value));
    }
    BFile::new(entries)
}

/// Writes exact `<index> <value>\n` lines; round-trips through
/// [`parse_bfile`].
pub fn emit_bfile(entries: &[(i64, Natural)], mut w: impl Write) -> io::Result<()> {
    for (index, value) in entries {
        writeln!(w, "{index} {value}")?;
    }
    Ok(())
}

/// Disagreements between two sequences over their shared index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOutcome {
    pub disagreements: Vec<(i64, Natural, Natural)>,
    /// True when the index ranges do not overlap at all.
    pub empty_overlap: bool,
}

pub fn diff_sequences(a: &BFile, b: &BFile) -> DiffOutcome {
    let (Some(a_last), Some(b_last)) = (a.last_index(), b.last_index()) else {
        return DiffOutcome { disagreements: Vec::new(), empty_overlap: true };
    };
    let lo = a.offset().max(b.offset());
    let hi = a_last.min(b_last);
    if lo > hi {
        return DiffOutcome { disagreements: Vec::new(), empty_overlap: true };
    }
    let mut disagreements = Vec::new();
    for index in lo..=hi {
        let (x, y) = (a.value_at(index).unwrap(), b.value_at(index).unwrap());
        if x != y {
            disagreements.push((index, x.clone(), y.clone()));
        }
    }
    DiffOutcome { disagreements, empty_overlap: false }
}

/// Output serialization for scan and report rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "jsonl" | "json-lines" => Some(OutputFormat::JsonLines),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "jsonl",
        }
    }
}

/// Where report rows go: a file or standard output.
#[derive(Debug, Clone)]
pub struct ReportSink {
    pub format: OutputFormat,
    pub destination: Option<PathBuf>,
}

impl ReportSink {
    pub fn stdout(format: OutputFormat) -> Self {
        ReportSink { format, destination: None }
    }

    pub fn open(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.destination {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }

    /// Serializes `rows` in the sink's format. CSV gets a mandatory header
    /// row derived from the record's field names; JSON lines keep the
    /// record's field order.
    pub fn write_rows<T: Serialize>(&self, rows: &[T]) -> io::Result<()> {
        let mut out = self.open()?;
        match self.format {
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(&mut out);
                for row in rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            OutputFormat::JsonLines => {
                for row in rows {
                    serde_json::to_writer(&mut out, row)?;
                    out.write_all(b"\n")?;
                }
            }
        }
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn parses_plain_bfile() {
        let f = parse_bfile("0 1\n1 0\n2 2\n".as_bytes()).unwrap();
        assert_eq!(f.offset(), 0);
        assert_eq!(f.entries(), &[(0, nat(1)), (1, nat(0)), (2, nat(2))]);
    }

    #[test]
    fn parses_comments_and_offset() {
        let f = parse_bfile("# comment\n5 10\n6 11\n".as_bytes()).unwrap();
        assert_eq!(f.offset(), 5);
        assert_eq!(f.entries().len(), 2);
    }

    #[test]
    fn rejects_malformed_line() {
        let err = parse_bfile("3 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, SeqIoError::Malformed { line: 1, .. }), "{err}");
    }

    #[test]
    fn rejects_gap() {
        let err = parse_bfile("0 1\n2 5\n".as_bytes()).unwrap_err();
        assert!(matches!(err, SeqIoError::NonContiguous { expected: 1, found: 2, .. }));
    }

    #[test]
    fn emit_round_trips() {
        let entries = vec![(0i64, nat(1)), (1, nat(7)), (2, nat(123456789))];
        let mut buf = Vec::new();
        emit_bfile(&entries, &mut buf).unwrap();
        assert_eq!(buf, b"0 1\n1 7\n2 123456789\n");
        let parsed = parse_bfile(buf.as_slice()).unwrap();
        assert_eq!(parsed.entries(), entries.as_slice());

        let mut empty = Vec::new();
        emit_bfile(&[], &mut empty).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn diff_finds_disagreements() {
        let a = parse_bfile("0 1\n1 2\n2 3\n".as_bytes()).unwrap();
        let b = parse_bfile("1 2\n2 9\n3 4\n".as_bytes()).unwrap();
        let d = diff_sequences(&a, &b);
        assert!(!d.empty_overlap);
        assert_eq!(d.disagreements, vec![(2, nat(3), nat(9))]);

        let d = diff_sequences(&a, &a);
        assert!(d.disagreements.is_empty());

        let c = parse_bfile("10 5\n11 6\n".as_bytes()).unwrap();
        let d = diff_sequences(&a, &c);
        assert!(d.empty_overlap);
        assert!(d.disagreements.is_empty());
    }
}
