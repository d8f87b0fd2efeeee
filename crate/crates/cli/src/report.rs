use std::io::Write;

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub struct Column {
    pub name: &'static str,
    /// Long columns (member lists) are left out of the table view.
    pub in_table: bool,
}

pub const fn col(name: &'static str) -> Column {
    Column { name, in_table: true }
}

pub const fn wide(name: &'static str) -> Column {
    Column { name, in_table: false }
}

/// What a verb produced, before rendering.
pub struct Report {
    pub summary: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// The first counterexample, if a verification failed.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(columns: Vec<Column>) -> Self {
        Report { summary: Vec::new(), columns, rows: Vec::new(), json: Value::Null, failure: None }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(msg.into());
        }
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.columns.iter().map(|c| c.name))?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Table => self.render_table(out),
        }
    }

    fn render_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for s in &self.summary {
            writeln!(out, "{s}")?;
        }
        let keep: Vec<usize> = (0..self.columns.len()).filter(|&i| self.columns[i].in_table).collect();
        if self.rows.is_empty() || keep.is_empty() {
            return Ok(());
        }
        if !self.summary.is_empty() {
            writeln!(out)?;
        }
        let mut widths: Vec<usize> = keep.iter().map(|&i| self.columns[i].name.chars().count()).collect();
        for r in &self.rows {
            for (w, &i) in widths.iter_mut().zip(&keep) {
                *w = (*w).max(r[i].chars().count());
            }
        }
        let line = |cells: Vec<&str>, out: &mut dyn Write| -> std::io::Result<()> {
            let mut s = String::new();
            for (k, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if k > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                if k + 1 < cells.len() {
                    s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
                }
            }
            writeln!(out, "{s}")
        };
        line(keep.iter().map(|&i| self.columns[i].name).collect(), out)?;
        for r in &self.rows {
            line(keep.iter().map(|&i| r[i].as_str()).collect(), out)?;
        }
        Ok(())
    }
}
