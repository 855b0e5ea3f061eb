#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_desirability")
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

pub fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().expect("run binary")
}

pub fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Writes `contents` to a fresh file under the system temp directory.
pub fn scratch_file(tag: &str, contents: &str) -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("desirability-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{tag}-{}.json", COUNTER.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&path, contents).unwrap();
    path
}

fn numbers_in(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(items) => items.iter().for_each(|i| numbers_in(i, out)),
        _ => {}
    }
}

/// Values of a `rank` JSON document in print order: value (and upper) per entry.
pub fn rank_numbers(json: &str) -> Vec<f64> {
    let doc: Value = serde_json::from_str(json).unwrap();
    let mut out = Vec::new();
    for entry in doc.as_array().unwrap() {
        out.push(entry["value"].as_f64().unwrap());
        if let Some(u) = entry.get("upper") {
            out.push(u.as_f64().unwrap());
        }
    }
    out
}

/// Matrix entries of a `matrix` JSON document, blocks in document order.
pub fn matrix_numbers(json: &str) -> Vec<f64> {
    let doc: Value = serde_json::from_str(json).unwrap();
    let mut out = Vec::new();
    match &doc {
        Value::Object(blocks) => {
            // block order in the text, not the map's sorted order
            let mut keyed: Vec<(usize, &Value)> = blocks
                .iter()
                .map(|(k, v)| (json.find(&format!("\"{k}\"")).unwrap(), v))
                .collect();
            keyed.sort_by_key(|(pos, _)| *pos);
            keyed.into_iter().for_each(|(_, v)| numbers_in(v, &mut out));
        }
        other => numbers_in(other, &mut out),
    }
    out
}

pub fn bounds_numbers(json: &str) -> Vec<f64> {
    let doc: Value = serde_json::from_str(json).unwrap();
    let mut out = vec![doc["necessary"].as_f64().unwrap(), doc["possible"].as_f64().unwrap()];
    if let Some(r) = doc.get("resemblance") {
        out.push(r["lower"].as_f64().unwrap());
        out.push(r["upper"].as_f64().unwrap());
    }
    out
}

/// Numeric cells of a `rank` table: the trailing value columns of each row.
pub fn rank_table_numbers(table: &str) -> Vec<f64> {
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    let trailing = if header.contains(&"upper") { 2 } else { 1 };
    let mut out = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split_whitespace().collect();
        for cell in &cells[cells.len() - trailing..] {
            out.push(cell.parse().unwrap());
        }
    }
    out
}

/// Numeric cells of `matrix` tables: every row starting with a world label.
pub fn matrix_table_numbers(table: &str) -> Vec<f64> {
    table
        .lines()
        .filter(|l| l.starts_with('w'))
        .flat_map(|l| {
            l.split_whitespace()
                .skip(1)
                .map(|c| c.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Numeric cells of a `bounds` table: the second column after the title and header.
pub fn bounds_table_numbers(table: &str) -> Vec<f64> {
    table
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().last().unwrap().parse().unwrap())
        .collect()
}
