//! Plain-text point-set files.
//!
//! ```text
//! # optional comments
//! q=9 d=2
//! 0,0
//! 1,4   # trailing comments are fine
//! ```
//!
//! The header must be the first non-comment line. Every point has exactly
//! `d` comma-separated decimal residues in `[0, q)`. Duplicate points are
//! collapsed.

use std::fmt::Write as _;

use crate::configsets::PointSet;
use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::ring::Modulus;

/// Largest dimension accepted from a file.
pub const MAX_FILE_DIM: usize = 16;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(Modulus, usize)> {
    let (mut q, mut d) = (None, None);
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(line, format!("malformed header field '{field}'")))?;
        let value: u64 = value
            .parse()
            .map_err(|_| err(line, format!("header value '{value}' is not a number")))?;
        let slot = match key {
            "q" => &mut q,
            "d" => &mut d,
            other => return Err(err(line, format!("unknown header key '{other}'"))),
        };
        if slot.replace(value).is_some() {
            return Err(err(line, format!("duplicate header key '{key}'")));
        }
    }
    let q = q.ok_or_else(|| err(line, "header is missing q"))?;
    let d = d.ok_or_else(|| err(line, "header is missing d"))?;
    let m = Modulus::from_q(q).map_err(|e| err(line, e.to_string()))?;
    if d == 0 || d as usize > MAX_FILE_DIM {
        return Err(err(
            line,
            format!("dimension {d} outside 1..={MAX_FILE_DIM}"),
        ));
    }
    Ok((m, d as usize))
}

/// Parses a point-set file.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut header: Option<(Modulus, usize)> = None;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((m, d)) = header else {
            header = Some(parse_header(line, body)?);
            continue;
        };
        let coords = body
            .split(',')
            .map(|c| {
                let c = c.trim();
                c.parse::<u64>()
                    .map_err(|_| err(line, format!("'{c}' is not a residue")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != d {
            return Err(err(
                line,
                format!("expected {d} coordinates, found {}", coords.len()),
            ));
        }
        let v = Vector::from_residues(m, coords)
            .map_err(|_| err(line, format!("coordinate out of range for q = {}", m.q())))?;
        points.push(v);
    }
    let (m, d) = header.ok_or_else(|| err(0, "missing 'q=<q> d=<d>' header"))?;
    PointSet::from_points(m, d, points)
}

/// Reads a one-dimensional point-set file as a base set `A ⊆ Z_q`.
pub fn parse_base_set(text: &str) -> Result<(Modulus, Vec<u64>)> {
    let set = parse_point_set(text)?;
    if set.dim() != 1 {
        return Err(err(
            0,
            format!("base set file must have d=1, found d={}", set.dim()),
        ));
    }
    Ok((set.modulus(), set.iter().map(|v| v.coords()[0]).collect()))
}

/// Renders a point set in the file format.
pub fn write_point_set(e: &PointSet) -> String {
    let mut out = format!("q={} d={}\n", e.modulus().q(), e.dim());
    for v in e {
        let coords: Vec<String> = v.coords().iter().map(u64::to_string).collect();
        writeln!(out, "{}", coords.join(",")).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_whitespace() {
        let text = "# a set\n\nq=9 d=2\n 0, 0\n1,4 # trailing\n1,4\n";
        let e = parse_point_set(text).unwrap();
        assert_eq!(e.modulus().q(), 9);
        assert_eq!(e.len(), 2);
        assert_eq!(write_point_set(&e), "q=9 d=2\n0,0\n1,4\n");
    }

    #[test]
    fn header_only_is_empty_set() {
        let e = parse_point_set("d=3 q=5").unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dim(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("", 0),
            ("0,0\n", 1),
            ("q=10 d=2\n", 1),
            ("q=9\n", 1),
            ("q=9 d=2 d=2\n", 1),
            ("q=9 d=0\n", 1),
            ("q=9 d=2 x=1\n", 1),
            ("q=9 d=2\n1\n", 2),
            ("q=9 d=2\n1,9\n", 2),
            ("q=9 d=2\n1,-1\n", 2),
            ("q=9 d=2\n\n1,a\n", 3),
        ];
        for (text, line) in cases {
            match parse_point_set(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn base_set() {
        let (m, a) = parse_base_set("q=9 d=1\n2\n0\n7\n").unwrap();
        assert_eq!(m.q(), 9);
        assert_eq!(a, vec![0, 2, 7]);
        assert!(parse_base_set("q=9 d=2\n").is_err());
    }
}
