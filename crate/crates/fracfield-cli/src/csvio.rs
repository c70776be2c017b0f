//! CSV emission and parsing: comma-separated, '.' decimal, 17 significant
//! digits on every float, header row first. The reader is the tool's own
//! consumer for round-trip checks.

use std::io::Write;
use std::path::Path;

use anyhow::Context;

/// 17 significant digits, locale-independent.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    buf: Vec<u8>,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = Vec::new();
        writeln!(buf, "{}", header.join(",")).expect("write to vec");
        CsvWriter { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert!(fields.iter().all(|f| !f.contains(',') && !f.contains('\n')));
        writeln!(self.buf, "{}", fields.join(",")).expect("write to vec");
    }

    pub fn bytes(&self) -> &[u8] {
        &self.buf
    }

    pub fn write_to(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, &self.buf).with_context(|| format!("cannot write {}", path.display()))
    }
}

/// Parse a CSV produced by [`CsvWriter`]: returns (header, rows).
pub fn read_csv(path: &Path) -> anyhow::Result<(Vec<String>, Vec<Vec<String>>)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .context("empty CSV")?
        .split(',')
        .map(str::to_string)
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row: Vec<String> = line.split(',').map(str::to_string).collect();
        if row.len() != header.len() {
            anyhow::bail!(
                "{}: row {} has {} fields, header has {}",
                path.display(),
                i + 2,
                row.len(),
                header.len()
            );
        }
        rows.push(row);
    }
    Ok((header, rows))
}
