//! Dense Matrix Market (`array`) reading and writing.
//!
//! Output is always `%%MatrixMarket matrix array complex general` with one
//! `re im` pair per line in column-major order, each component printed with
//! 17 significant digits, so a canonical file survives a read/write cycle
//! byte for byte. `real` and `integer` inputs are widened to complex.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{c, Matrix};

const HEADER: &str = "%%MatrixMarket matrix array complex general";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
}

fn parse_header(line: &str) -> Result<Field> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::Parse(format!("bad Matrix Market header: '{line}'")));
    }
    if tokens[2] != "array" {
        return Err(Error::Parse(format!(
            "only the dense array format is supported, got '{}'",
            tokens[2]
        )));
    }
    if tokens[4] != "general" {
        return Err(Error::Parse(format!(
            "only general symmetry is supported, got '{}'",
            tokens[4]
        )));
    }
    match tokens[3].as_str() {
        "real" => Ok(Field::Real),
        "integer" => Ok(Field::Integer),
        "complex" => Ok(Field::Complex),
        other => Err(Error::Parse(format!("unsupported field '{other}'"))),
    }
}

fn parse_number(token: &str, line_no: usize) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::Parse(format!("line {line_no}: bad number '{token}'")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("line {line_no}: non-finite value '{token}'")));
    }
    Ok(v)
}

pub fn parse(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".to_string()))?;
    let field = parse_header(header)?;

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_no, size_line) = body
        .next()
        .ok_or_else(|| Error::Parse("missing size line".to_string()))?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("line {}: bad size '{t}'", size_no + 1)))
        })
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!(
            "line {}: expected 'rows cols'",
            size_no + 1
        )));
    };

    let width = if field == Field::Complex { 2 } else { 1 };
    let mut values = Vec::with_capacity(rows * cols);
    for (idx, line) in body {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != width {
            return Err(Error::Parse(format!(
                "line {}: expected {width} value(s), got {}",
                idx + 1,
                tokens.len()
            )));
        }
        let re = parse_number(tokens[0], idx + 1)?;
        let im = if width == 2 { parse_number(tokens[1], idx + 1)? } else { 0.0 };
        values.push(c(re, im));
    }
    if values.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries for a {rows}x{cols} matrix, got {}",
            rows * cols,
            values.len()
        )));
    }
    Ok(Matrix::from_column_slice(rows, cols, &values))
}

/// Canonical text form of `m`.
pub fn format(m: &Matrix) -> String {
    let mut out = String::with_capacity(48 * (m.len() + 2));
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "{} {}", m.nrows(), m.ncols());
    for z in m.iter() {
        let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
    }
    out
}

pub fn read(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    fs::write(path, format(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_real_rows;

    #[test]
    fn complex_round_trip_is_exact() {
        let m = Matrix::from_fn(3, 2, |i, j| c(0.1 * i as f64 - 1.0 / 3.0, j as f64 * 1e-300 - 0.0));
        let text = format(&m);
        let back = parse(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(format(&back), text);
    }

    #[test]
    fn column_major_order() {
        let m = from_real_rows(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let text = format(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines[1], "2 2");
        assert!(lines[2].starts_with("1.0000000000000000e0 "));
        assert!(lines[3].starts_with("3.0000000000000000e0 "));
    }

    #[test]
    fn real_and_integer_are_widened() {
        let m = parse("%%MatrixMarket matrix array real general\n% comment\n2 1\n1.5\n-2\n").unwrap();
        assert_eq!(m, Matrix::from_column_slice(2, 1, &[c(1.5, 0.0), c(-2.0, 0.0)]));
        let m = parse("%%MatrixMarket matrix array integer general\n1 2\n3\n4\n").unwrap();
        assert_eq!(m[(0, 1)], c(4.0, 0.0));
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "hello\n1 1\n1 0\n",
            "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1.0\n",
            "%%MatrixMarket matrix array real symmetric\n1 1\n1\n",
            "%%MatrixMarket matrix array complex general\n2 1\n1 0\n",
            "%%MatrixMarket matrix array complex general\n1 1\n1\n",
            "%%MatrixMarket matrix array real general\n1 1\nnan\n",
            "%%MatrixMarket matrix array real general\n1 x\n1\n",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn empty_matrix() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(parse(&format(&m)).unwrap().shape(), (0, 3));
    }
}
