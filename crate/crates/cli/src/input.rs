//! Input file format:
//!
//! ```text
//! dim=<d>
//! <d whitespace-separated scalars per point of A>
//!
//! <d whitespace-separated scalars per point of B>
//! ```

use std::path::Path;

use boxdtw::{Error, Point, PointSequence, Result, Scalar};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the two sequences from the text of an input file.
pub fn parse_input_str<S: Scalar>(text: &str) -> Result<(PointSequence<S>, PointSequence<S>)> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let dim = match lines.next() {
        Some((_, header)) => header
            .strip_prefix("dim=")
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| {
                parse_err(
                    1,
                    format!("expected header `dim=<d>` with d >= 1, found `{header}`"),
                )
            })?,
        None => return Err(parse_err(1, "empty input, expected header `dim=<d>`")),
    };

    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut in_b = false;
    let mut b_closed = false;
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        if line.is_empty() {
            if !in_b {
                if a.is_empty() {
                    return Err(parse_err(no, "sequence A has no points"));
                }
                in_b = true;
            } else if !b.is_empty() {
                b_closed = true;
            }
            continue;
        }
        if b_closed {
            return Err(parse_err(no, "unexpected data after sequence B"));
        }
        let coords = line
            .split_whitespace()
            .map(|tok| S::parse_literal(tok).map_err(|m| parse_err(no, m)))
            .collect::<Result<Vec<S>>>()?;
        if coords.len() != dim {
            return Err(parse_err(
                no,
                format!("expected {dim} coordinates, found {}", coords.len()),
            ));
        }
        if in_b { &mut b } else { &mut a }.push(Point::new(coords));
    }
    if !in_b {
        return Err(parse_err(
            last,
            "missing blank line separating sequence A from sequence B",
        ));
    }
    if b.is_empty() {
        return Err(parse_err(last, "sequence B has no points"));
    }
    Ok((PointSequence::new("A", a)?, PointSequence::new("B", b)?))
}

/// Reads and parses an input file.
pub fn parse_input<S: Scalar>(path: &Path) -> Result<(PointSequence<S>, PointSequence<S>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_input_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxdtw::Rational;

    #[test]
    fn scalar_and_planar_files() {
        let (a, b) = parse_input_str::<i64>("dim=1\n0\n3\n\n1\n").unwrap();
        assert_eq!((a.raw_coords(), b.raw_coords()), (&[0, 3][..], &[1][..]));
        let (a, b) = parse_input_str::<i64>("dim=2\n0 0\n\n1 -2\n").unwrap();
        assert_eq!((a.len(), b.point(0)), (1, &[1, -2][..]));
    }

    #[test]
    fn missing_separator_names_a_line() {
        let err = parse_input_str::<i64>("dim=1\n0\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_lines_are_reported() {
        let cases = [
            ("dim=1\n0\nx\n\n1\n", 3),
            ("dim=2\n0 0\n1\n\n1 1\n", 3),
            ("dim=1\n1.5\n\n1\n", 2),
            ("dim=1\n1\n\n2\n\n3\n", 6),
            ("dims=1\n1\n\n2\n", 1),
            ("dim=1\n\n2\n", 2),
        ];
        for (text, line) in cases {
            match parse_input_str::<i64>(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn rational_literals() {
        let (a, _) = parse_input_str::<Rational>("dim=1\n1/3\n0.25\n\n1\n").unwrap();
        assert_eq!(a.raw_coords()[0], Rational::new(1, 3));
        assert_eq!(a.raw_coords()[1], Rational::new(1, 4));
    }

    #[test]
    fn trailing_blank_lines_are_fine() {
        assert!(parse_input_str::<i64>("dim=1\n1\n\n2\n\n\n").is_ok());
    }
}
