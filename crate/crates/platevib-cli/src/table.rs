//! Column-ordered tables with CSV and JSON renderings carrying identical
//! numeric payloads.

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Field {
    pub fn text(s: impl Into<String>) -> Self {
        Field::Text(s.into())
    }
}

pub struct Table {
    command: &'static str,
    columns: &'static [&'static str],
    rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Table { command, columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV: header row, `.` decimal separator, one record per line.
    /// Floats render in round-trip precision, or at 4 significant digits
    /// under `paper_digits`.
    pub fn to_csv(&self, paper_digits: bool) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|field| match field {
                    Field::Float(x) if paper_digits => format_sig(*x, 4),
                    Field::Float(x) => format!("{x}"),
                    Field::Int(i) => format!("{i}"),
                    Field::Text(s) => s.clone(),
                    Field::Empty => String::new(),
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON: `{"command", "columns", "rows": [{column: value, ...}]}` with
    /// floats always at full round-trip precision.
    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (name, field) in self.columns.iter().zip(row) {
                    let value = match field {
                        Field::Float(x) => json!(x),
                        Field::Int(i) => json!(i),
                        Field::Text(s) => json!(s),
                        Field::Empty => Value::Null,
                    };
                    object.insert(name.to_string(), value);
                }
                Value::Object(object)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("json rendering");
        text.push('\n');
        text
    }
}

/// `x` at `digits` significant digits, scientific notation.
fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{:.*e}", digits - 1, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_precision() {
        let mut t = Table::new("demo", &["a", "b"]);
        t.push(vec![Field::Float(0.1), Field::Float(1.0449497152274218e6)]);
        let csv = t.to_csv(false);
        assert_eq!(csv, "a,b\n0.1,1044949.7152274218\n");
        let csv = t.to_csv(true);
        assert_eq!(csv, "a,b\n1.000e-1,1.045e6\n");
    }

    #[test]
    fn json_payload_matches_csv() {
        let mut t = Table::new("demo", &["x", "s", "gap"]);
        t.push(vec![Field::Float(0.30000000000000004), Field::text("ok"), Field::Empty]);
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["rows"][0]["x"], serde_json::json!(0.30000000000000004));
        assert_eq!(json["rows"][0]["gap"], serde_json::Value::Null);
    }
}
