use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use ndmc_core::eval::CheckStats;

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, contents: &str) -> Self {
        InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(contents.as_bytes())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub node_visits: u64,
    pub branches: u64,
    pub set_candidates: u64,
    pub width: usize,
    pub wall_ms: f64,
}

impl Stats {
    pub fn new(s: CheckStats, wall_ms: f64) -> Self {
        Stats {
            node_visits: s.node_visits,
            branches: s.branches,
            set_candidates: s.set_candidates,
            width: s.width,
            wall_ms,
        }
    }
}

/// Everything a command produced. Apart from `stats.wall_ms` and bench
/// timings, a report is a function of the inputs and the engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub engine: Option<String>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

impl RunReport {
    pub fn new(command: Vec<String>, result: serde_json::Value) -> Self {
        RunReport {
            command,
            inputs: Vec::new(),
            engine: None,
            result,
            stats: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `key: value` lines; nested objects are flattened with dotted keys and
    /// a `rows` array is printed as a table.
    pub fn to_text(&self, with_stats: bool) -> String {
        let mut out = String::new();
        flatten(&mut out, "", &self.result);
        if with_stats {
            if let Some(engine) = &self.engine {
                writeln!(out, "engine: {engine}").unwrap();
            }
            if let Some(s) = &self.stats {
                writeln!(
                    out,
                    "stats: width {} node_visits {} branches {} set_candidates {} wall_ms {:.3}",
                    s.width, s.node_visits, s.branches, s.set_candidates, s.wall_ms
                )
                .unwrap();
            }
        }
        out
    }
}

fn scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_f64() => format!("{:.3}", n.as_f64().unwrap_or(f64::NAN)),
        other => other.to_string(),
    }
}

fn flatten(out: &mut String, prefix: &str, v: &serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                if k == "rows" {
                    table(out, v);
                } else {
                    flatten(out, &key, v);
                }
            }
        }
        other => {
            let key = if prefix.is_empty() { "result" } else { prefix };
            writeln!(out, "{key}: {}", scalar(other)).unwrap();
        }
    }
}

fn table(out: &mut String, rows: &serde_json::Value) {
    let Some(rows) = rows.as_array() else { return };
    let Some(first) = rows.first().and_then(|r| r.as_object()) else { return };
    let columns: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c.as_str()).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(columns.iter().map(|c| c.as_str()).collect())).unwrap();
    for r in &cells {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digests_are_sha256() {
        let d = InputDigest::of(Path::new("x"), "abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn text_flattens_and_tabulates() {
        let r = RunReport::new(
            vec!["nd".into()],
            json!({"nd": 2, "rows": [{"n": 50, "time_ms": 1.5}, {"n": 100, "time_ms": 12.25}]}),
        );
        let text = r.to_text(false);
        assert!(text.contains("nd: 2"));
        assert!(text.contains("n    time_ms"));
        assert!(text.contains("100  12.250"));
    }
}
