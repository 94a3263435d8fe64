//! Batch front-end: JSON documents in, deterministic text or JSON reports out.

pub mod document;
pub mod load;
pub mod run;

use serde_json::json;
use sha2::{Digest, Sha256};

use vogan_core::Error;

use document::Document;
use load::Workspace;
use run::{default_queries, error_kind, run_query, Options, Report};

pub use run::parse_mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// 2 for bad input data, 3 for missing table entries, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Validation(_) | Error::UnknownId(_) => 2,
        Error::IncompleteTable(_) => 3,
        _ => 1,
    }
}

pub fn digest(input: &[u8]) -> String {
    Sha256::digest(input).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn render_text(results: &[(String, String, Result<Report, Error>)]) -> String {
    let mut out = String::new();
    for (kind, target, res) in results {
        out.push_str(&format!("== {kind} {target}\n"));
        match res {
            Ok(r) => {
                for l in &r.lines {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Err(e) => out.push_str(&format!("error: {e}\n")),
        }
    }
    out
}

fn render_json(input: &[u8], results: &[(String, String, Result<Report, Error>)]) -> String {
    let reports: Vec<_> = results
        .iter()
        .map(|(kind, target, res)| match res {
            Ok(r) => json!({ "query": kind, "target": target, "failed": r.failed, "result": r.value }),
            Err(e) => json!({
                "query": kind,
                "target": target,
                "error": { "kind": error_kind(e), "message": e.to_string() },
            }),
        })
        .collect();
    let doc = json!({ "version": document::VERSION, "input_sha256": digest(input), "reports": reports });
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn failure(input: &[u8], format: Format, e: Error) -> Output {
    let stdout = match format {
        Format::Text => format!("error: {e}\n"),
        Format::Json => {
            let doc = json!({
                "version": document::VERSION,
                "input_sha256": digest(input),
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
    };
    Output { stdout, code: exit_code(&e) }
}

/// Loads `input` and runs its queries, or only those of kind `only`.
pub fn run_document(input: &[u8], only: Option<&str>, opts: Options, format: Format) -> Output {
    let loaded = std::str::from_utf8(input)
        .map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))
        .and_then(Document::parse)
        .and_then(Workspace::load);
    let ws = match loaded {
        Ok(ws) => ws,
        Err(e) => return failure(input, format, e),
    };
    let queries = match only {
        None => ws.queries.clone(),
        Some(kind) if !document::QUERY_KINDS.contains(&kind) => {
            return failure(input, format, Error::Parse(format!("unknown query {kind:?}")))
        }
        Some(kind) => {
            let listed: Vec<_> = ws.queries.iter().filter(|q| q.kind() == kind).cloned().collect();
            if listed.is_empty() {
                match default_queries(&ws, kind) {
                    Ok(qs) => qs,
                    Err(e) => return failure(input, format, e),
                }
            } else {
                listed
            }
        }
    };
    let results: Vec<_> =
        queries.iter().map(|q| (q.kind().to_string(), q.target(), run_query(&ws, q, opts))).collect();
    let code = results
        .iter()
        .find_map(|(_, _, r)| r.as_ref().err().map(exit_code))
        .unwrap_or_else(|| if results.iter().any(|(_, _, r)| r.as_ref().is_ok_and(|r| r.failed)) { 2 } else { 0 });
    let stdout = match format {
        Format::Text => render_text(&results),
        Format::Json => render_json(input, &results),
    };
    Output { stdout, code }
}
