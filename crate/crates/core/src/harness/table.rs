//! Row/column model for emitted tables plus the CSV and JSON encoders.
//! Floats are printed in a fixed 12-significant-digit scientific form so an
//! identical configuration produces byte-identical files regardless of thread
//! count or output path.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// CSV column header (units in brackets) with the matching JSON key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub key: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Undefined quantity: empty CSV field, JSON null.
    Absent,
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [Column],
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EchoValue {
    Text(String),
    Float(f64),
    Int(u64),
    Bool(bool),
}

/// Resolved-configuration lines echoed into every output for provenance.
/// Thread count and output path are deliberately never echoed: neither may
/// change the bytes produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Echo {
    pub entries: Vec<(&'static str, EchoValue)>,
}

impl Echo {
    pub fn text(&mut self, key: &'static str, value: impl Into<String>) {
        self.entries.push((key, EchoValue::Text(value.into())));
    }

    pub fn float(&mut self, key: &'static str, value: f64) {
        self.entries.push((key, EchoValue::Float(value)));
    }

    pub fn int(&mut self, key: &'static str, value: u64) {
        self.entries.push((key, EchoValue::Int(value)));
    }

    pub fn bool(&mut self, key: &'static str, value: bool) {
        self.entries.push((key, EchoValue::Bool(value)));
    }
}

/// 12 significant digits, scientific, with −0 folded into 0.
pub fn fmt_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

fn echo_value(v: &EchoValue) -> String {
    match v {
        EchoValue::Text(s) => s.clone(),
        EchoValue::Float(f) => fmt_float(*f),
        EchoValue::Int(i) => i.to_string(),
        EchoValue::Bool(b) => b.to_string(),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Absent => String::new(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => csv_quote(s),
    }
}

fn json_escape(s: &str) -> String {
    serde_json::to_string(s).expect("string encoding")
}

fn json_cell(c: &Cell) -> String {
    match c {
        Cell::Absent => "null".to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => json_escape(s),
    }
}

pub fn write_csv_echo(w: &mut dyn Write, echo: &Echo) -> io::Result<()> {
    for (k, v) in &echo.entries {
        writeln!(w, "# {k} = {}", echo_value(v))?;
    }
    Ok(())
}

pub fn write_csv_table(w: &mut dyn Write, table: &Table) -> io::Result<()> {
    let header: Vec<&str> = table.columns.iter().map(|c| c.name).collect();
    writeln!(w, "{}", header.join(","))?;
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.columns.len());
        let fields: Vec<String> = row.iter().map(csv_cell).collect();
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// `{"key":value,...}` with keys in echo order.
pub fn json_config(echo: &Echo) -> String {
    let body: Vec<String> = echo
        .entries
        .iter()
        .map(|(k, v)| {
            let value = match v {
                EchoValue::Text(s) => json_escape(s),
                EchoValue::Float(f) => fmt_float(*f),
                EchoValue::Int(i) => i.to_string(),
                EchoValue::Bool(b) => b.to_string(),
            };
            format!("{}:{}", json_escape(k), value)
        })
        .collect();
    format!("{{{}}}", body.join(","))
}

/// One row as a JSON object keyed by the column keys.
pub fn json_row(table: &Table, row: &[Cell]) -> String {
    debug_assert_eq!(row.len(), table.columns.len());
    let body: Vec<String> = table
        .columns
        .iter()
        .zip(row)
        .map(|(c, cell)| format!("{}:{}", json_escape(c.key), json_cell(cell)))
        .collect();
    format!("{{{}}}", body.join(","))
}

pub fn write_json_array(w: &mut dyn Write, table: &Table) -> io::Result<()> {
    if table.rows.is_empty() {
        write!(w, "[]")?;
        return Ok(());
    }
    let rows: Vec<String> = table.rows.iter().map(|r| json_row(table, r)).collect();
    write!(w, "[\n{}\n]", rows.join(",\n"))
}

/// Full sweep-style document: config echo plus one table.
pub fn write_table(
    w: &mut dyn Write,
    format: OutputFormat,
    echo: &Echo,
    table: &Table,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            write_csv_echo(w, echo)?;
            write_csv_table(w, table)
        }
        OutputFormat::Json => {
            write!(w, "{{\"config\":{},\"rows\":", json_config(echo))?;
            write_json_array(w, table)?;
            writeln!(w, "}}")
        }
    }
}
