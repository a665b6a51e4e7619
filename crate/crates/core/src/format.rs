//! Grid text and JSON encodings.
//!
//! Grid text is an optional `# pda f=<f> K=<K>` header followed by one line
//! per row of whitespace-separated tokens, `*` for a star and a decimal
//! label otherwise. JSON is `{"rows", "cols", "cells"}` with `cells` a flat
//! row-major list where `null` is a star.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

pub fn parse_grid(text: &str) -> Result<Pda> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if !rows.is_empty() || header.is_some() {
                return Err(parse_err(lineno, 1, "header must come first"));
            }
            header = Some(parse_header(rest, lineno)?);
            continue;
        }
        let row = trimmed
            .split_whitespace()
            .enumerate()
            .map(|(t, tok)| parse_token(tok).ok_or_else(|| {
                parse_err(lineno, t + 1, &format!("invalid token {tok:?}"))
            }))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::RaggedRows {
                    line: lineno,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, 1, "no rows"));
    }
    if let Some((f, k)) = header {
        if rows.len() != f || rows[0].len() != k {
            return Err(parse_err(
                1,
                1,
                &format!(
                    "header says f={f} K={k} but grid is {}x{}",
                    rows.len(),
                    rows[0].len()
                ),
            ));
        }
    }
    Pda::from_rows(rows)
}

fn parse_token(tok: &str) -> Option<Cell> {
    if tok == "*" {
        return Some(Cell::Star);
    }
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok().map(Cell::Label)
}

fn parse_header(rest: &str, line: usize) -> Result<(usize, usize)> {
    let mut words = rest.split_whitespace();
    if words.next() != Some("pda") {
        return Err(parse_err(line, 1, "expected header '# pda f=<f> K=<K>'"));
    }
    let mut f = None;
    let mut k = None;
    for w in words {
        match w.split_once('=') {
            Some(("f", v)) => f = v.parse().ok(),
            Some(("K", v)) => k = v.parse().ok(),
            _ => return Err(parse_err(line, 1, &format!("unknown header field {w:?}"))),
        }
    }
    match (f, k) {
        (Some(f), Some(k)) => Ok((f, k)),
        _ => Err(parse_err(line, 1, "header needs f=<f> and K=<K>")),
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

/// Canonical text form: header line, single spaces, LF endings.
pub fn serialize_grid(p: &Pda) -> String {
    let mut out = format!("# pda f={} K={}\n", p.rows(), p.cols());
    for j in 0..p.rows() {
        let line: Vec<String> = p.row(j).iter().map(Cell::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct PdaJson {
    rows: usize,
    cols: usize,
    cells: Vec<Option<u32>>,
}

pub fn to_json(p: &Pda) -> String {
    let doc = PdaJson {
        rows: p.rows(),
        cols: p.cols(),
        cells: p.cells().iter().map(|c| c.label()).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Pda> {
    let doc: PdaJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let cells = doc
        .cells
        .into_iter()
        .map(|c| c.map_or(Cell::Star, Cell::Label))
        .collect();
    Pda::new(doc.rows, doc.cols, cells)
}

/// Parses either encoding, picking JSON when the text starts with `{`.
pub fn parse_any(text: &str) -> Result<Pda> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse_grid(text)
    }
}
