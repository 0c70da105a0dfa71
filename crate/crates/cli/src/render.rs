//! Aligned text tables.

use serde_json::Value;

use flagops_core::operations::OperationTable;
use flagops_core::roots::RootDatum;

/// Pad every column to its widest cell.
pub fn aligned<S: AsRef<str>>(headers: &[S], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.as_ref().chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.iter().map(|h| h.as_ref()).collect())];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        out.push(line(row.iter().map(|s| s.as_str()).collect()));
    }
    out.join("\n") + "\n"
}

/// `true` or the witness as `root@element`.
pub fn verdict(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Object(m) => format!(
            "no ({} at {})",
            m.get("root").and_then(Value::as_str).unwrap_or("?"),
            m.get("at").and_then(Value::as_str).unwrap_or("?")
        ),
        other => other.to_string(),
    }
}

/// Equivariant block followed by the forgetful block.
pub fn operation_table(datum: &RootDatum, table: &OperationTable) -> String {
    let mut headers = vec!["source".to_string()];
    headers.extend(datum.elements().map(|v| datum.word_name(v)));
    let equivariant: Vec<Vec<String>> = datum
        .elements()
        .map(|w| {
            let mut row = vec![datum.word_name(w)];
            row.extend(table.rows[w].iter().map(|p| p.render()));
            row
        })
        .collect();
    let forgetful: Vec<Vec<String>> = table
        .forgetful()
        .into_iter()
        .enumerate()
        .map(|(w, r)| {
            let mut row = vec![datum.word_name(w)];
            row.extend(r.iter().map(|c| c.to_string()));
            row
        })
        .collect();
    format!(
        "{} basis, equivariant\n{}\nforgetful\n{}",
        table.basis.name(),
        aligned(&headers, &equivariant),
        aligned(&headers, &forgetful)
    )
}
