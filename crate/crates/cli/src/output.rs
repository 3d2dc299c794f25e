use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(value),
        Format::Pretty => {
            let mut out = String::new();
            pretty(value, 0, &mut out);
            out
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// The main array of objects becomes the table; anything else is written as
/// `key,value` rows.
fn render_csv(value: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let table = value.as_object().and_then(|obj| {
        obj.values()
            .find_map(|v| v.as_array().filter(|a| !a.is_empty() && a.iter().all(Value::is_object)))
    });
    match (table, value.as_object()) {
        (Some(rows), _) => {
            let header: Vec<String> = rows[0].as_object().expect("object").keys().cloned().collect();
            w.write_record(&header).expect("in-memory write");
            for row in rows {
                let obj = row.as_object().expect("object");
                let record: Vec<String> = header.iter().map(|k| obj.get(k).map(cell).unwrap_or_default()).collect();
                w.write_record(&record).expect("in-memory write");
            }
        }
        (None, Some(obj)) => {
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in obj {
                w.write_record([k.as_str(), &cell(v)]).expect("in-memory write");
            }
        }
        (None, None) => {
            w.write_record([cell(value)]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => pretty_map(map, indent, out),
        Value::Array(items) => {
            for item in items {
                if item.is_object() || item.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    pretty(item, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", cell(item)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", cell(other))),
    }
}

fn pretty_map(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in map {
        let scalar_list = v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()));
        if scalar_list && v.as_array().map_or(0, Vec::len) <= 8 {
            out.push_str(&format!("{pad}{k}: {v}\n"));
        } else if v.is_object() || v.is_array() {
            out.push_str(&format!("{pad}{k}:\n"));
            pretty(v, indent + 1, out);
        } else {
            out.push_str(&format!("{pad}{k}: {}\n", cell(v)));
        }
    }
}
