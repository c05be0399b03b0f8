//! Run reports: a command echo, a digest of everything read, and the result.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// What a run produced, before formatting.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    /// Human-readable body for `--format table`.
    pub table: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Infeasible,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::Error => 2,
            Status::Infeasible => 3,
        }
    }
}

/// Hashes the arguments and the contents of every input file, in order.
#[derive(Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn update(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update((label.len() as u64).to_le_bytes());
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

pub fn render_json(
    command: &[String],
    digest: String,
    outcome: &Outcome,
    wall_ms: Option<f64>,
) -> String {
    let mut report = json!({
        "command": command,
        "inputs_sha256": digest,
        "status": outcome.status,
        "exit_code": outcome.status.exit_code(),
        "result": outcome.result,
    });
    if let Some(ms) = wall_ms {
        report["wall_time_ms"] = json!(ms);
    }
    // serde_json's default map is ordered by key, so this is stable.
    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
}

pub fn render_table(outcome: &Outcome, wall_ms: Option<f64>) -> String {
    let mut s = outcome.table.clone();
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    if outcome.status != Status::Ok {
        let _ = writeln!(s, "status: {}", status_name(outcome.status));
    }
    if let Some(ms) = wall_ms {
        let _ = writeln!(s, "wall time: {ms:.3} ms");
    }
    s
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::VerificationFailed => "verification-failed",
        Status::Infeasible => "infeasible",
        Status::Error => "error",
    }
}

/// Renders rows as left-aligned columns.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}
