//! Deterministic CSV and JSON table emission.
//!
//! Numbers are printed with 12 significant digits in lowercase scientific
//! notation with a `.` decimal separator, independent of locale, so repeated
//! runs with the same configuration produce byte-identical files.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<OutputFormat> {
        match text {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Str(String),
    Num(f64),
    Int(u64),
}

/// Column-named row set with a fixed schema.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: OutputFormat, w: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w),
            OutputFormat::Json => self.write_json(w),
        }
    }

    fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(render_cell).collect();
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| format!("{}: {}", json_string(name), json_value(cell)))
                .collect();
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "  {{{}}}{comma}", fields.join(", "))?;
        }
        writeln!(w, "]")
    }
}

fn render_cell(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => s.clone(),
        Cell::Num(v) => fmt_sig12(*v),
        Cell::Int(v) => v.to_string(),
    }
}

fn json_value(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => json_string(s),
        Cell::Num(v) => {
            if v.is_finite() {
                fmt_sig12(*v)
            } else {
                "null".into()
            }
        }
        Cell::Int(v) => v.to_string(),
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// 12 significant digits, lowercase `e` exponent.
pub fn fmt_sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.11e}")
}
