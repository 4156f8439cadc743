//! Plain-text matrix format.
//!
//! ```text
//! # optional comment lines start with '#'
//! 3
//! 0 1 0
//! 0 0 1
//! 1 0 0
//! ```
//!
//! The first non-comment line holds `n`, followed by `n` rows of `n`
//! whitespace-separated decimal reals. Blank lines are ignored. NaN and
//! infinite tokens are rejected. Rendering writes 17 significant digits so
//! that parsing a rendered matrix reproduces it bit for bit.

use std::fmt::Write as _;

use super::{NonNegMatrix, RealMatrix};
use crate::error::{Error, Result};

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn parse_entry(tok: &str, line: usize, col: usize, nonneg: bool) -> Result<f64> {
    let value: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, col, format!("invalid number `{tok}`")))?;
    if !value.is_finite() {
        return Err(parse_err(line, col, format!("non-finite value `{tok}`")));
    }
    if nonneg && value < 0.0 {
        return Err(parse_err(line, col, format!("negative entry `{tok}`")));
    }
    Ok(value)
}

fn parse_entries(text: &str, nonneg: bool) -> Result<(usize, Vec<f64>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing dimension line"))?;
    let mut htoks = tokens(header);
    let (hcol, htok) = htoks.next().expect("content line has a token");
    let n: usize = htok
        .parse()
        .map_err(|_| parse_err(hline, hcol, format!("invalid dimension `{htok}`")))?;
    if n == 0 {
        return Err(parse_err(hline, hcol, "dimension must be at least 1"));
    }
    if let Some((col, tok)) = htoks.next() {
        return Err(parse_err(
            hline,
            col,
            format!("unexpected token `{tok}` after dimension"),
        ));
    }

    let mut data = Vec::with_capacity(n * n);
    let mut last_line = hline;
    for row in 0..n {
        let (lno, line) = lines.next().ok_or_else(|| {
            parse_err(last_line + 1, 1, format!("expected {n} rows, found {row}"))
        })?;
        last_line = lno;
        let mut count = 0;
        for (col, tok) in tokens(line) {
            if count == n {
                return Err(parse_err(
                    lno,
                    col,
                    format!("row has more than {n} entries"),
                ));
            }
            data.push(parse_entry(tok, lno, col, nonneg)?);
            count += 1;
        }
        if count < n {
            let end = line.chars().count() + 1;
            return Err(parse_err(
                lno,
                end,
                format!("row has {count} entries, expected {n}"),
            ));
        }
    }
    if let Some((lno, line)) = lines.next() {
        let (col, _) = tokens(line).next().expect("content line has a token");
        return Err(parse_err(
            lno,
            col,
            format!("unexpected content after {n} rows"),
        ));
    }
    Ok((n, data))
}

/// Parses a nonnegative matrix; negative entries are errors that name their
/// line and column.
pub fn parse_matrix(text: &str) -> Result<NonNegMatrix> {
    let (n, data) = parse_entries(text, true)?;
    NonNegMatrix::new(n, data)
}

/// Parses a sign-unrestricted matrix (e.g. a perturbation direction).
pub fn parse_real_matrix(text: &str) -> Result<RealMatrix> {
    let (n, data) = parse_entries(text, false)?;
    RealMatrix::new(n, data)
}

pub fn render_real_matrix(m: &RealMatrix) -> String {
    let n = m.n();
    let mut out = String::with_capacity(n * n * 24 + 8);
    writeln!(out, "{n}").unwrap();
    for i in 0..n {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn render_matrix(m: &NonNegMatrix) -> String {
    render_real_matrix(m.as_real())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let text = "# a 3-cycle\n3\n0 1 0\n\n# middle\n0 0 1\n1 0 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.get(2, 0), 1.0);
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn rejects_non_finite_tokens() {
        for bad in ["nan", "NaN", "inf", "-inf", "infinity", "1e999"] {
            let text = format!("2\n1 {bad}\n0 1\n");
            match parse_matrix(&text) {
                Err(Error::Parse {
                    line: 2, col: 3, ..
                }) => {}
                other => panic!("{bad}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn negative_entry_names_position() {
        let err = parse_matrix("2\n1 2\n3   -4\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                col: 5,
                msg: "negative entry `-4`".into()
            }
        );
        assert!(parse_real_matrix("2\n1 2\n3   -4\n").is_ok());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            parse_matrix(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("0\n"),
            Err(Error::Parse {
                line: 1,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix("2\n1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_matrix("2\n1 2 3\n1 2\n"),
            Err(Error::Parse {
                line: 2,
                col: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix("2\n1\n1 2\n"),
            Err(Error::Parse {
                line: 2,
                col: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix("1\n1\n2\n"),
            Err(Error::Parse {
                line: 3,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix("x\n"),
            Err(Error::Parse {
                line: 1,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn render_uses_seventeen_digits() {
        let m = NonNegMatrix::from_rows(&[[0.1]]).unwrap();
        assert_eq!(render_matrix(&m), "1\n1.0000000000000001e-1\n");
        assert_eq!(parse_matrix(&render_matrix(&m)).unwrap(), m);
    }
}
