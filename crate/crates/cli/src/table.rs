//! Aligned plain-text rendering of a JSON payload.
//!
//! Scalars become `key  value` rows addressed by their dotted path. Arrays of
//! objects become column tables, one row per element.

use std::collections::BTreeSet;

use serde_json::{Map, Value};

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(",")
        }
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// Leaves of an object keyed by dotted path; nested tables stay compact.
fn flatten(prefix: &str, map: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in map {
        let path = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => flatten(&path, inner, out),
            other => out.push((path, scalar(other))),
        }
    }
}

fn pad(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn collect<'a>(
    prefix: &str,
    map: &'a Map<String, Value>,
    rows: &mut Vec<Vec<String>>,
    tables: &mut Vec<(String, &'a Vec<Value>)>,
) {
    for (k, v) in map {
        let path = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => collect(&path, inner, rows, tables),
            Value::Array(items) if is_table(v) => tables.push((path, items)),
            Value::Array(items)
                if items.len() > 1 && items.iter().all(|x| x.as_str().is_some_and(|s| s.contains(' '))) =>
            {
                for (i, item) in items.iter().enumerate() {
                    let key = if i == 0 { path.clone() } else { String::new() };
                    rows.push(vec![key, scalar(item)]);
                }
            }
            other => rows.push(vec![path, scalar(other)]),
        }
    }
}

pub fn render(value: &Value) -> String {
    let Value::Object(map) = value else {
        return format!("{}\n", scalar(value));
    };
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    collect("", map, &mut rows, &mut tables);
    let mut out = pad(&rows);
    for (path, items) in tables {
        let flat: Vec<Vec<(String, String)>> = items
            .iter()
            .map(|item| {
                let mut cells = Vec::new();
                if let Value::Object(m) = item {
                    flatten("", m, &mut cells);
                }
                cells
            })
            .collect();
        let mut columns: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for cells in &flat {
            for (k, _) in cells {
                if seen.insert(k.clone()) {
                    columns.push(k.clone());
                }
            }
        }
        let mut grid = vec![columns.clone()];
        for cells in &flat {
            grid.push(
                columns
                    .iter()
                    .map(|c| {
                        cells
                            .iter()
                            .find(|(k, _)| k == c)
                            .map_or("-".to_string(), |(_, v)| v.clone())
                    })
                    .collect(),
            );
        }
        out.push_str(&format!("\n{path}:\n"));
        out.push_str(&pad(&grid));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalars_and_tables() {
        let v = json!({"a": 1, "b": {"c": "x", "d": [1, 2]}, "rows": [{"k": 1, "v": {"w": 2}}, {"k": 10}]});
        let text = render(&v);
        assert_eq!(text, "a    1\nb.c  x\nb.d  1,2\n\nrows:\nk   v.w\n1   2\n10  -\n");
        let v = json!({"trace": ["step one", "step two"]});
        assert_eq!(render(&v), "trace  step one\n       step two\n");
    }
}
