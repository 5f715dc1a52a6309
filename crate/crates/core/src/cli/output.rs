//! CSV and JSON-lines emission with a fixed column order.

use std::io::{self, Write};

use super::config::Format;

/// One table cell. Floats go out with 17 significant digits in CSV.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(Option<f64>),
    Int(i64),
    Bool(bool),
    Text(Option<String>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(Some(v)) if v.is_finite() => format!("{v:.16e}"),
            Cell::Float(_) => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(None) => String::new(),
            Cell::Text(Some(s)) => {
                if s.contains([',', '"', '\n', '\r']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Float(Some(v)) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Float(None) => Value::Null,
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => s.clone().map_or(Value::Null, Value::String),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for row in &self.rows {
            let mut line = String::from("{");
            for (i, (k, c)) in self.header.iter().zip(row).enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&serde_json::to_string(k)?);
                line.push(':');
                line.push_str(&serde_json::to_string(&c.json())?);
            }
            line.push('}');
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Jsonl => self.write_jsonl(out),
        }
    }

    pub fn to_string(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("tables are utf-8")
    }
}
