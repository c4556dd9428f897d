//! Reading and writing quandle tables.
//!
//! Two formats are accepted: the JSON object `{"n": 3, "table": [[...], ...]}`
//! and a plain-text form whose first line is `n`, followed by `n` lines of
//! `n` whitespace-separated integers. [`parse_table`] picks the format from
//! the first non-blank character.

use serde::Deserialize;
use thiserror::Error;

use crate::quandle::{MalformedTable, QuandleError, QuandleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("declared n = {declared} but the table has {rows} rows")]
    CountMismatch { declared: usize, rows: usize },
    #[error(transparent)]
    Malformed(#[from] MalformedTable),
    #[error(transparent)]
    Quandle(QuandleError),
}

impl From<QuandleError> for ParseError {
    fn from(e: QuandleError) -> Self {
        match e {
            QuandleError::Malformed(m) => ParseError::Malformed(m),
            other => ParseError::Quandle(other),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJson {
    n: i64,
    table: Vec<Vec<i64>>,
}

/// Parses either format into a square table with entries in `{0..n-1}`.
///
/// The axioms are not checked; see [`crate::validate_quandle`].
pub fn parse_table(input: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json_table(input)
    } else {
        parse_text_table(input)
    }
}

/// [`parse_table`] followed by axiom validation.
pub fn parse_quandle(input: &str) -> Result<QuandleTable, ParseError> {
    Ok(QuandleTable::new(parse_table(input)?)?)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn finish(declared: i64, raw: Vec<Vec<i64>>) -> Result<Vec<Vec<usize>>, ParseError> {
    if declared < 1 {
        return Err(MalformedTable::Empty.into());
    }
    let n = declared as usize;
    if raw.len() != n {
        return Err(ParseError::CountMismatch {
            declared: n,
            rows: raw.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (row, r) in raw.into_iter().enumerate() {
        if r.len() != n {
            return Err(MalformedTable::NotSquare {
                row,
                len: r.len(),
                n,
            }
            .into());
        }
        let mut out = Vec::with_capacity(n);
        for (col, v) in r.into_iter().enumerate() {
            if v < 0 || v as usize >= n {
                return Err(MalformedTable::OutOfRange {
                    row,
                    col,
                    value: v.max(0) as usize,
                    n,
                }
                .into());
            }
            out.push(v as usize);
        }
        rows.push(out);
    }
    Ok(rows)
}

pub fn parse_json_table(input: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let raw: RawJson =
        serde_json::from_str(input).map_err(|e| syntax(e.line(), e.column(), e.to_string()))?;
    finish(raw.n, raw.table)
}

pub fn parse_text_table(input: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (first_no, first) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    let mut header = tokens(first);
    let (col, tok) = header
        .next()
        .ok_or_else(|| syntax(first_no, 1, "expected the order n"))?;
    let declared: i64 = tok
        .parse()
        .map_err(|_| syntax(first_no, col, format!("expected an integer, found {tok:?}")))?;
    if let Some((col, tok)) = header.next() {
        return Err(syntax(
            first_no,
            col,
            format!("unexpected token {tok:?} after n"),
        ));
    }
    if declared < 1 {
        return Err(MalformedTable::Empty.into());
    }

    let mut raw = Vec::new();
    for (line_no, line) in lines {
        if raw.len() == declared as usize {
            return Err(syntax(line_no, 1, "more rows than the declared order"));
        }
        let mut row = Vec::new();
        for (col, tok) in tokens(line) {
            let v: i64 = tok
                .parse()
                .map_err(|_| syntax(line_no, col, format!("expected an integer, found {tok:?}")))?;
            if v < 0 || v >= declared {
                return Err(syntax(
                    line_no,
                    col,
                    format!("entry {v} out of range 0..{declared}"),
                ));
            }
            row.push(v);
        }
        if row.len() != declared as usize {
            return Err(syntax(
                line_no,
                1,
                format!("row has {} entries, expected {declared}", row.len()),
            ));
        }
        raw.push(row);
    }
    finish(declared, raw)
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let col = line[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, tok))
    })
}

pub fn to_json(q: &QuandleTable) -> String {
    serde_json::to_string(q).expect("tables always serialize")
}

pub fn to_text(q: &QuandleTable) -> String {
    let mut out = format!("{}\n", q.len());
    for row in q.rows() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
