//! Plain-text matrix files.
//!
//! ```text
//! # comments run to end of line
//! 2
//! 1/4 3/4
//! 0.75 0.25
//! ```
//!
//! The first data line holds the order `n`, followed by exactly `n` rows of
//! `n` tokens. Tokens are integers, fractions `p/q` or finite decimals.

use std::fmt::Write as _;

use thiserror::Error;

use crate::exact::{parse_rational, ExactError, Rational};
use crate::matrix::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input: expected the matrix order")]
    MissingOrder,
    #[error("order must be a positive integer, found `{0}`")]
    BadOrder(String),
    #[error("row has {found} entries, expected {expected}")]
    RaggedRow { expected: usize, found: usize },
    #[error("bad entry `{token}`: {source}")]
    BadToken { token: String, source: ExactError },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|tok| (line[..tok.as_ptr() as usize - line.as_ptr() as usize].chars().count() + 1, tok))
            .collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix, ParseError> {
    let mut lines = data_lines(text);
    let err = |line, column, kind| ParseError { line, column, kind };
    let (line, header) = lines.next().ok_or(err(1, 1, ParseErrorKind::MissingOrder))?;
    let (column, token) = header[0];
    let n = match token.parse::<usize>() {
        Ok(n) if n > 0 && header.len() == 1 => n,
        _ => return Err(err(line, column, ParseErrorKind::BadOrder(header.iter().map(|t| t.1).collect::<Vec<_>>().join(" ")))),
    };

    let mut rows = Vec::with_capacity(n);
    let mut last_line = line;
    for (line, tokens) in lines {
        if rows.len() == n {
            return Err(err(line, tokens[0].0, ParseErrorKind::RowCount { expected: n, found: n + 1 }));
        }
        if tokens.len() != n {
            let column = tokens.get(n).map_or(tokens[tokens.len() - 1].0, |t| t.0);
            return Err(err(line, column, ParseErrorKind::RaggedRow { expected: n, found: tokens.len() }));
        }
        let row = tokens
            .iter()
            .map(|&(column, token)| {
                parse_rational(token).map_err(|source| {
                    err(line, column, ParseErrorKind::BadToken { token: token.to_string(), source })
                })
            })
            .collect::<Result<Vec<Rational>, _>>()?;
        rows.push(row);
        last_line = line;
    }
    if rows.len() != n {
        return Err(err(last_line + 1, 1, ParseErrorKind::RowCount { expected: n, found: rows.len() }));
    }
    Ok(RationalMatrix::from_rows(rows).expect("square by construction"))
}

/// Inverse of [`parse_matrix`]; entries are written as integers or `p/q`.
pub fn serialize_matrix(m: &RationalMatrix) -> String {
    let mut out = format!("{}\n", m.order());
    for row in m.rows() {
        let tokens: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
    out
}
