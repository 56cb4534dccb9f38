use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Named rows of a report.
pub(crate) struct Table {
    name: String,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub(crate) fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a command prints: scalar fields, tables and notes, rendered in
/// any of the output formats.
pub(crate) struct Report {
    title: String,
    fields: Vec<(String, Value)>,
    tables: Vec<Table>,
    notes: Vec<String>,
    /// Printed as is in every format.
    raw: Option<String>,
}

impl Report {
    pub(crate) fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), fields: Vec::new(), tables: Vec::new(), notes: Vec::new(), raw: None }
    }

    pub(crate) fn raw(text: String) -> Self {
        Report { raw: Some(text), ..Report::new("") }
    }

    pub(crate) fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub(crate) fn table(&mut self, t: Table) -> &mut Self {
        self.tables.push(t);
        self
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub(crate) fn render(&self, format: Format) -> Result<String> {
        if let Some(text) = &self.raw {
            return Ok(format!("{}\n", text.trim_end()));
        }
        match format {
            Format::Table => Ok(self.text()),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "  {k:<width$}  {}", show(v));
        }
        for t in &self.tables {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(show).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|c| cells.iter().map(|r| r[c].len()).chain([t.columns[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| {
                let parts: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                format!("  {}\n", parts.join("  ").trim_end())
            };
            let _ = write!(out, "\n{}:\n{}", t.name, line(&t.columns));
            for row in &cells {
                out.push_str(&line(row));
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }

    /// The single table if there is one, otherwise `field,value` rows.
    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self.tables.as_slice() {
            [] => {
                w.write_record(["field", "value"])?;
                for (k, v) in &self.fields {
                    w.write_record([k.clone(), raw(v)])?;
                }
            }
            [t] => {
                w.write_record(&t.columns)?;
                for row in &t.rows {
                    w.write_record(row.iter().map(raw))?;
                }
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "this command produces several tables; use --format table or json".into(),
                ))
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn json(&self) -> Result<String> {
        let mut obj = Map::new();
        obj.insert("command".into(), self.title.clone().into());
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            obj.insert(t.name.clone(), Value::Array(rows));
        }
        if !self.notes.is_empty() {
            obj.insert("notes".into(), self.notes.clone().into());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj))?;
        s.push('\n');
        Ok(s)
    }
}

/// Floats to 10 decimals with trailing zeros dropped.
fn show(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if x != 0.0 && x.abs() < 1e-6 {
                return format!("{x:.6e}");
            }
            let s = format!("{x:.10}");
            let s = s.trim_end_matches('0').trim_end_matches('.');
            if s == "-0" { "0".into() } else { s.into() }
        }
        Value::Array(items) => format!("[{}]", items.iter().map(show).collect::<Vec<_>>().join(", ")),
        _ => raw(v),
    }
}

fn raw(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.field("m", 2).field("min", 0.8535533905932737);
        let mut t = Table::new("rows", &["x", "p"]);
        t.push(vec!["0,1".into(), 0.5.into()]);
        r.table(t).note("hello");
        r
    }

    #[test]
    fn text_rounds_floats() {
        let s = sample().render(Format::Table).unwrap();
        assert!(s.contains("min  0.8535533906"), "{s}");
        assert!(s.contains("note: hello"));
    }

    #[test]
    fn csv_quotes_per_rfc4180() {
        assert_eq!(sample().render(Format::Csv).unwrap(), "x,p\n\"0,1\",0.5\n");
    }

    #[test]
    fn json_keeps_full_precision() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["min"], 0.8535533905932737);
        assert_eq!(v["rows"][0]["x"], "0,1");
    }
}
