//! Plain CSV tables with `#` comment preamble.
//!
//! Every file starts with a schema line, then free-form metadata comments,
//! then a header row. Floats are written with 17 significant digits so that
//! re-parsing reproduces the in-memory value exactly.

use std::io::{Read, Write};

use crate::error::Result;

pub const SCHEMA: &str = "# longmem-csv v1";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            comments: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(mut self, line: impl Into<String>) -> Self {
        self.comments.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{SCHEMA}")?;
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(f))
    }

    /// Parses a table written by [`Table::write_to`]; comment lines are kept
    /// without the leading `# ` and without the schema line.
    pub fn read_from<R: Read>(mut r: R) -> Result<Table> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        let comments = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .filter(|l| *l != SCHEMA)
            .map(|l| l.trim_start_matches('#').trim_start().to_string())
            .collect();
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let header = rdr.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            rows.push(rec?.iter().map(str::to_string).collect());
        }
        Ok(Table {
            comments,
            header,
            rows,
        })
    }

    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        self.rows.iter().map(|r| r[idx].parse().ok()).collect()
    }
}

impl std::fmt::Display for Table {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut buf = Vec::new();
        self.write_to(&mut buf).map_err(|_| std::fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn floats_round_trip_exactly(xs in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO, 1..40)) {
            let mut t = Table::new(["j", "value"]).comment("kind=test");
            for (j, x) in xs.iter().enumerate() {
                t.push(vec![j.to_string(), fmt_f64(*x)]);
            }
            let back = Table::read_from(t.to_string().as_bytes()).unwrap();
            prop_assert_eq!(&back.comments, &vec!["kind=test".to_string()]);
            let ys = back.column_f64("value").unwrap();
            for (x, y) in xs.iter().zip(&ys) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
