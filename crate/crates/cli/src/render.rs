//! Canonical output: JSON with sorted keys and 17-significant-digit floats,
//! and CSV with the same float format.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no infinities; CSV uses the same spelling for consistency.
        "null".to_string()
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|z| complex(*z)).collect())
}

/// Serializes with keys in lexicographic order (serde_json's default map is
/// ordered) and every non-integer number through [`float`].
pub fn json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out.push('\n');
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => out.push_str(&i.to_string()),
            (_, Some(u)) => out.push_str(&u.to_string()),
            _ => out.push_str(&float(n.as_f64().unwrap_or(f64::NAN))),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => write_object(map, out),
    }
}

fn write_object(map: &Map<String, Value>, out: &mut String) {
    let mut keys: Vec<&String> = map.keys().collect();
    keys.sort();
    out.push('{');
    for (i, key) in keys.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&Value::String(key.clone()).to_string());
        out.push(':');
        write_value(&map[key], out);
    }
    out.push('}');
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Rows as objects keyed by column name; numeric cells become numbers.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let fields = self.header.iter().zip(row).map(|(h, cell)| {
                    let v = match cell.parse::<f64>() {
                        Ok(x) if cell.contains(['.', 'e']) => json!(x),
                        Ok(_) => cell.parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(cell)),
                        Err(_) if cell == "null" => Value::Null,
                        Err(_) => Value::String(cell.clone()),
                    };
                    (h.clone(), v)
                });
                Value::Object(fields.collect())
            })
            .collect();
        json!({ "rows": Value::Array(rows) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_and_floats_fixed() {
        let v = json!({"b": 1.5, "a": {"z": 3, "y": [0.1, true, null]}});
        assert_eq!(json(&v), "{\"a\":{\"y\":[1.0000000000000001e-1,true,null],\"z\":3},\"b\":1.5000000000000000e0}\n");
    }

    #[test]
    fn csv_round_trip_to_json() {
        let mut t = Table::new(&["k", "x", "label"]);
        t.push(vec!["2".into(), float(0.5), "a".into()]);
        assert_eq!(t.to_csv(), "k,x,label\n2,5.0000000000000000e-1,a\n");
        assert_eq!(t.to_json(), json!({"rows": [{"k": 2, "x": 0.5, "label": "a"}]}));
    }
}
