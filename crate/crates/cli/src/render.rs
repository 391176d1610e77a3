//! Plain-text rendering of the JSON outputs for `--format table`.

use serde_json::Value;

/// Keys under which edge pairs are directed.
const DIRECTED: [&str; 3] = ["dag", "dags", "members"];

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(x) => Some(x.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn edge_list(edges: &[Value], arrow: &str) -> String {
    let parts: Vec<String> = edges
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([u, v]) => format!("{u}{arrow}{v}"),
            Some([a, b, c]) => format!("{a}->{b}<-{c}"),
            _ => e.to_string(),
        })
        .collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn set(v: &Value) -> String {
    let items: Vec<String> = v
        .as_array()
        .map(|xs| xs.iter().map(|x| x.to_string()).collect())
        .unwrap_or_default();
    format!("{{{}}}", items.join(","))
}

/// One-line form of graphs, DAGs, dagoids and vertex sets, if `v` is one.
fn compact(v: &Value, directed: bool) -> Option<String> {
    let obj = v.as_object()?;
    let arrow = if directed { "->" } else { "-" };
    let on = |o: &serde_json::Map<String, Value>| match o.get("vertices") {
        Some(vs) => format!("n={} V={}", o.get("n").unwrap_or(&Value::Null), set(vs)),
        None => format!("n={}", o.get("n").unwrap_or(&Value::Null)),
    };
    let keys: Vec<&str> = obj
        .keys()
        .map(String::as_str)
        .filter(|&k| k != "vertices")
        .collect();
    if keys == ["n", "edges"] || keys == ["edges", "n"] {
        let edges = obj.get("edges")?.as_array()?;
        return Some(format!("{}: {}", on(obj), edge_list(edges, arrow)));
    }
    if obj.len() == 2 {
        if let (Some(Value::Object(sk)), Some(Value::Array(imm))) =
            (obj.get("skeleton"), obj.get("immoralities"))
        {
            let skeleton = sk
                .get("edges")
                .and_then(Value::as_array)
                .map(|e| edge_list(e, "-"))?;
            return Some(format!(
                "{}: skeleton {skeleton}; immoralities {}",
                on(sk),
                edge_list(imm, "")
            ));
        }
    }
    None
}

fn inline_scalars(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    let parts = items.iter().map(scalar).collect::<Option<Vec<_>>>()?;
    Some(parts.join(" "))
}

fn is_vertex_list(v: &Value) -> bool {
    v.as_array().is_some_and(|xs| xs.iter().all(Value::is_u64))
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, None, v, 0);
    out
}

/// One line per item, as for a JSON stream.
pub fn render_item(key: &str, v: &Value) -> String {
    compact(v, DIRECTED.contains(&key)).unwrap_or_else(|| render(v).trim_end().to_string())
}

fn write(out: &mut String, key: Option<&str>, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let label = key.map(|k| format!("{k}: ")).unwrap_or_default();
    let directed = key.is_some_and(|k| DIRECTED.contains(&k));
    if let Some(s) = scalar(v).or_else(|| compact(v, directed)) {
        out.push_str(&format!("{pad}{label}{s}\n"));
        return;
    }
    if is_vertex_list(v) && key.is_some() {
        out.push_str(&format!("{pad}{label}{}\n", set(v)));
        return;
    }
    match v {
        Value::Object(obj) => {
            // subset vectors: one `{A} value` line per entry
            if let (Some(n), Some(Value::Array(entries)), 2) =
                (obj.get("n"), obj.get("entries"), obj.len())
            {
                out.push_str(&format!("{pad}{label}n={n}\n"));
                for e in entries {
                    let (s, x) = (
                        e.get("set").unwrap_or(&Value::Null),
                        e.get("value").unwrap_or(&Value::Null),
                    );
                    out.push_str(&format!("{pad}  {}\t{x}\n", set(s)));
                }
                return;
            }
            if key.is_some() {
                out.push_str(&format!("{pad}{}\n", label.trim_end()));
            }
            let inner = if key.is_some() { depth + 1 } else { depth };
            for (k, x) in obj {
                write(out, Some(k), x, inner);
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{}\n", label.trim_end()));
            for x in items {
                match scalar(x)
                    .or_else(|| compact(x, directed))
                    .or_else(|| inline_scalars(x).filter(|_| !is_vertex_list(x)))
                {
                    Some(s) => out.push_str(&format!("{pad}  {s}\n")),
                    None if is_vertex_list(x) => out.push_str(&format!("{pad}  {}\n", set(x))),
                    None => {
                        let mut item = String::new();
                        write(&mut item, None, x, depth + 2);
                        out.push_str(&format!("{pad}  -\n{item}"));
                    }
                }
            }
        }
        _ => unreachable!("scalars are handled above"),
    }
}
