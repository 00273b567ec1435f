//! Scheme file format: the first line holds `n`, then `n` rows of
//! whitespace-separated colors. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::scheme::Scheme;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing size line")]
    MissingSize,
    #[error("line {line}: cannot parse {token:?} as an integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} colors, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: color 0 is not allowed with one-based input")]
    ZeroColor { line: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadOptions {
    /// Colors in the file start at 1; they are shifted down on read.
    pub one_based: bool,
}

/// Parses the color matrix. Axiom checks are left to [`Scheme::from_color_matrix`].
pub fn parse_matrix(text: &str, options: ReadOptions) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (size_line, size_text) = lines.next().ok_or(ParseError::MissingSize)?;
    let n: usize = size_text
        .parse()
        .map_err(|_| ParseError::BadInteger { line: size_line, token: size_text.to_string() })?;

    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        let row = text
            .split_whitespace()
            .map(|tok| {
                let c: usize = tok.parse().map_err(|_| ParseError::BadInteger { line, token: tok.to_string() })?;
                if options.one_based {
                    c.checked_sub(1).ok_or(ParseError::ZeroColor { line })
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(ParseError::RowLength { line, expected: n, found: row.len() });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseError::RowCount { expected: n, found: rows.len() });
    }
    Ok(rows)
}

pub fn write_scheme(scheme: &Scheme) -> String {
    let n = scheme.size();
    let mut out = format!("{n}\n");
    for row in scheme.rows() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
