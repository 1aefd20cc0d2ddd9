//! The text matroid format.
//!
//! ```text
//! matroid q=<q> r=<r> n=<n>
//! <label> <digits>        # n lines, r digits each, most significant first
//! ```
//!
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored. GF(4) digits `0 1 2 3` denote `0, 1, ω, ω+1`. Points must be
//! nonzero, normalized (first nonzero coordinate 1) and distinct.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gfq::{normalize, Field, Vector};
use crate::matroid::RepMatroid;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn header_field(line: usize, tok: Option<&(usize, &str)>, key: &str, fallback_col: usize) -> Result<usize> {
    let &(col, t) = tok.ok_or_else(|| parse_err(line, fallback_col, format!("missing `{key}=`")))?;
    let value = t
        .strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .ok_or_else(|| parse_err(line, col, format!("expected `{key}=<integer>`, found `{t}`")))?;
    value
        .parse()
        .map_err(|_| parse_err(line, col + key.len() + 1, format!("`{value}` is not a non-negative integer")))
}

/// Parses the text format.
pub fn parse_matroid(text: &str) -> Result<RepMatroid> {
    let mut header: Option<(&'static Field, usize, usize)> = None;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut seen_points = HashSet::new();
    let mut seen_labels = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap();
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        let Some((field, r, _)) = header else {
            if toks[0].1 != "matroid" {
                return Err(parse_err(line, toks[0].0, "expected header `matroid q=<q> r=<r> n=<n>`"));
            }
            let end = content.trim_end().len() + 1;
            let q = header_field(line, toks.get(1), "q", end)?;
            let r = header_field(line, toks.get(2), "r", end)?;
            let n = header_field(line, toks.get(3), "n", end)?;
            if let Some(&(col, t)) = toks.get(4) {
                return Err(parse_err(line, col, format!("unexpected `{t}` after header")));
            }
            let field = Field::shared(q).map_err(|e| parse_err(line, toks[1].0, e.to_string()))?;
            header = Some((field, r, n));
            continue;
        };
        let [(_, label), (dcol, digits)] = toks[..] else {
            let col = toks.get(2).map_or(content.trim_end().len() + 1, |t| t.0);
            return Err(parse_err(line, col, "expected `<label> <digits>`"));
        };
        if digits.chars().count() != r {
            return Err(parse_err(
                line,
                dcol,
                format!("expected {r} digits, found {}", digits.chars().count()),
            ));
        }
        if let Some((off, ch)) = digits
            .char_indices()
            .find(|&(_, c)| c.to_digit(10).map_or(true, |d| d as usize >= field.order()))
        {
            return Err(parse_err(
                line,
                dcol + off,
                format!("`{ch}` is not a digit below {}", field.order()),
            ));
        }
        let v = Vector::from_digits(digits, field.order()).expect("digits validated");
        if v.is_zero() {
            return Err(Error::InvalidPoint {
                line,
                message: "zero vector".into(),
            });
        }
        if normalize(field, &v)? != v {
            return Err(Error::InvalidPoint {
                line,
                message: format!("{digits} is not normalized (first nonzero digit must be 1)"),
            });
        }
        if !seen_points.insert(v.clone()) {
            return Err(Error::InvalidPoint {
                line,
                message: format!("duplicate point {digits}"),
            });
        }
        if !seen_labels.insert(label.to_string()) {
            return Err(parse_err(line, 1, format!("duplicate label `{label}`")));
        }
        points.push(v);
        labels.push(label.to_string());
    }
    let Some((field, r, n)) = header else {
        return Err(parse_err(last_line.max(1), 1, "missing header"));
    };
    if points.len() != n {
        return Err(parse_err(
            last_line.max(1),
            1,
            format!("header declares n={n} but {} points follow", points.len()),
        ));
    }
    RepMatroid::new(field, r, points, labels)
}

/// Formats `m` with its own labels and coordinates, in element order.
pub fn format_matroid(m: &RepMatroid) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "matroid q={} r={} n={}", m.q(), m.ambient_rank(), m.len()).unwrap();
    for (label, p) in m.labels().iter().zip(m.points()) {
        if label.is_empty() || label.contains(char::is_whitespace) || label.contains('#') {
            return Err(Error::InvalidMatroid(format!("label `{label}` cannot be written")));
        }
        writeln!(s, "{label} {}", p.digits()).unwrap();
    }
    Ok(s)
}

/// Canonical text of `m`: the canonical form's points, sorted, labelled by
/// their digit strings.
pub fn format_canonical(m: &RepMatroid) -> String {
    format_matroid(&m.canonical()).expect("digit labels are writable")
}

pub fn read_matroid(path: impl AsRef<Path>) -> Result<RepMatroid> {
    parse_matroid(&std::fs::read_to_string(path)?)
}

pub fn write_matroid(m: &RepMatroid, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_matroid(m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circuit_matroid, dual_k33, graphic, complete_graph, pg};

    #[test]
    fn round_trip() {
        for m in [
            pg(3, 2).unwrap(),
            dual_k33(),
            graphic(&complete_graph(4)).unwrap(),
            pg(2, 4).unwrap(),
            circuit_matroid(4, 3).unwrap(),
        ] {
            let text = format_matroid(&m).unwrap();
            let back = parse_matroid(&text).unwrap();
            assert_eq!(back.points(), m.points());
            assert_eq!(back.labels(), m.labels());
            assert_eq!(format_matroid(&back).unwrap(), text);
        }
    }

    #[test]
    fn canonical_text_is_sorted_and_invariant() {
        let k4 = graphic(&complete_graph(4)).unwrap();
        let text = format_canonical(&k4);
        let lines: Vec<&str> = text.lines().skip(1).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert!(lines.iter().all(|l| {
            let (a, b) = l.split_once(' ').unwrap();
            a == b
        }));
        assert_eq!(format_canonical(&parse_matroid(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let m = parse_matroid("# fano line\nmatroid q=2 r=2 n=3  # header\n\na 10\nb 01 # second\nc 11\n").unwrap();
        assert_eq!((m.len(), m.ambient_rank()), (3, 2));
        assert_eq!(m.index_of("c").unwrap(), 2);
    }

    #[test]
    fn gf4_digits() {
        let m = parse_matroid("matroid q=4 r=2 n=2\nx 12\ny 13\n").unwrap();
        assert_eq!(m.point(0).coords(), &[1, 2]);
    }

    #[test]
    fn errors() {
        let e = |s: &str| parse_matroid(s).unwrap_err();
        assert!(matches!(e("matroid q=2 r=2 n=2\na 10\nb 10\n"), Error::InvalidPoint { line: 3, .. }));
        assert!(matches!(e("matroid q=2 r=2 n=1\na 00\n"), Error::InvalidPoint { line: 2, .. }));
        assert!(matches!(e("matroid q=3 r=2 n=1\na 20\n"), Error::InvalidPoint { line: 2, .. }));
        assert_eq!(
            e("matroid q=2 r=2 n=1\na 12\n"),
            Error::Parse {
                line: 2,
                column: 4,
                message: "`2` is not a digit below 2".into()
            }
        );
        assert!(matches!(e("matroid q=2 r=3 n=1\na 10\n"), Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(e("matroid q=6 r=2 n=0\n"), Error::Parse { line: 1, column: 9, .. }));
        assert!(matches!(e("matroid q=2 r=x n=0\n"), Error::Parse { line: 1, column: 15, .. }));
        assert!(matches!(e("matroid q=2 r=2 n=2\na 10\n"), Error::Parse { .. }));
        assert!(matches!(e("hello\n"), Error::Parse { line: 1, column: 1, .. }));
        assert!(matches!(e(""), Error::Parse { .. }));
        assert!(matches!(e("matroid q=2 r=2 n=2\na 10\na 01\n"), Error::Parse { line: 3, .. }));
    }
}
