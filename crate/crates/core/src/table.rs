//! Tabular output shared by the report and the CLI.
//!
//! TSV: one header line, TAB-separated cells, reals with a fixed number of
//! decimals (4 unless a column asks for more), missing values as `NA`.
//! JSON: an array of objects keyed by column name, with reals rounded to
//! the same number of decimals and missing values as `null`.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real { value: f64, decimals: usize },
    Bool(bool),
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn real(value: f64) -> Self {
        Cell::Real { value, decimals: 4 }
    }

    pub fn real_with(value: f64, decimals: usize) -> Self {
        Cell::Real { value, decimals }
    }

    pub fn opt_real(value: Option<f64>) -> Self {
        value.map_or(Cell::Missing, Cell::real)
    }

    fn tsv(&self) -> String {
        match self {
            Cell::Text(s) => s.replace(['\t', '\n', '\r'], " "),
            Cell::Int(i) => i.to_string(),
            Cell::Real { value, decimals } => format_real(*value, *decimals),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => "NA".to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Real { value, decimals } => {
                if value.is_finite() {
                    let scale = 10f64.powi(*decimals as i32);
                    let rounded = (value * scale).round() / scale;
                    // avoid "-0.0"
                    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
                    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
                } else {
                    Value::String(format_real(*value, *decimals))
                }
            }
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Missing => Value::Null,
        }
    }
}

pub fn format_real(value: f64, decimals: usize) -> String {
    if value.is_nan() {
        "NA".to_string()
    } else if value.is_infinite() {
        if value > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        let s = format!("{value:.decimals$}");
        // avoid "-0.0000"
        if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
            s[1..].to_string()
        } else {
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<I, S>(columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::tsv).collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (c, cell) in self.columns.iter().zip(row) {
                        obj.insert(c.clone(), cell.json());
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("table values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_and_json() {
        let mut t = Table::new(["key", "n", "f", "x"]);
        t.push(vec![Cell::text("we"), Cell::Int(3), Cell::real(1.0 / 3.0), Cell::Missing]);
        t.push(vec![Cell::text("a\tb"), Cell::Int(0), Cell::real_with(-1e-9, 6), Cell::Bool(true)]);
        assert_eq!(t.to_tsv(), "key\tn\tf\tx\nwe\t3\t0.3333\tNA\na b\t0\t0.000000\ttrue\n");
        let v = t.to_json_value();
        assert_eq!(v[0]["f"], serde_json::json!(0.3333));
        assert_eq!(v[0]["x"], Value::Null);
        assert_eq!(v[1]["f"], serde_json::json!(0.0));
    }

    #[test]
    fn non_finite_reals() {
        assert_eq!(format_real(f64::INFINITY, 4), "inf");
        assert_eq!(format_real(f64::NEG_INFINITY, 4), "-inf");
        assert_eq!(format_real(f64::NAN, 4), "NA");
    }
}
