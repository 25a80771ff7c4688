//! Self-describing output tables.
//!
//! CSV carries a `#`-prefixed metadata preamble, a header row with
//! units baked into the column names, and values in SI base units with
//! floats fixed at 9 significant digits. The JSON form mirrors the
//! same columns as arrays. Both renderings are byte-deterministic for
//! identical inputs.

use std::io::Write;

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub values: Vec<Cell>,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<Column>,
}

/// Fixed 9-significant-digit float rendering.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0.0".to_string()
    } else {
        format!("{x:.8e}")
    }
}

impl Table {
    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn column(&mut self, name: &str, values: Vec<Cell>) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.values.len(), values.len(), "ragged column {name}");
        }
        self.columns.push(Column {
            name: name.to_string(),
            values,
        });
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        writeln!(w, "{}", header.join(","))?;
        let rows = self.columns.first().map_or(0, |c| c.values.len());
        for i in 0..rows {
            let mut fields = Vec::with_capacity(self.columns.len());
            for c in &self.columns {
                fields.push(match &c.values[i] {
                    Cell::Float(x) => fmt_float(*x),
                    Cell::Int(n) => n.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => s.clone(),
                });
            }
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let meta: Vec<serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| serde_json::json!({ "key": k, "value": v }))
            .collect();
        let columns: Vec<serde_json::Value> = self
            .columns
            .iter()
            .map(|c| {
                let values: Vec<serde_json::Value> = c
                    .values
                    .iter()
                    .map(|cell| match cell {
                        Cell::Float(x) => serde_json::json!(x),
                        Cell::Int(n) => serde_json::json!(n),
                        Cell::Bool(b) => serde_json::json!(b),
                        Cell::Text(s) => serde_json::json!(s),
                    })
                    .collect();
                serde_json::json!({ "name": c.name, "values": values })
            })
            .collect();
        let doc = serde_json::json!({ "meta": meta, "columns": columns });
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)?;
        Ok(())
    }
}
