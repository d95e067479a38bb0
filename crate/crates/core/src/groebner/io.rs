//! Ideal input files: a `ring` header, then one polynomial per line.
//!
//! ```text
//! # twisted cubic
//! ring n=3 field=q
//! x1^2 - x2
//! x1^3 - x3
//! ```

use super::Ideal;
use crate::error::{AlgebraError, Result};
use crate::polycore::{parse_poly, Field, MultiPoly, Ring};

/// Parse `n=<vars> field=q|fp:<p> [matrix=RxC]`, with or without the leading
/// `ring` keyword.
pub fn parse_ring_spec(text: &str) -> Result<Ring> {
    let mut words = text.split_whitespace().peekable();
    if words.peek() == Some(&"ring") {
        words.next();
    }
    let mut n: Option<usize> = None;
    let mut field = Field::Rational;
    let mut shape: Option<(usize, usize)> = None;
    for w in words {
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| AlgebraError::InvalidInput(format!("bad ring token `{w}`")))?;
        match key {
            "n" => {
                n = Some(value.parse().map_err(|_| {
                    AlgebraError::InvalidInput(format!("bad variable count `{value}`"))
                })?)
            }
            "field" => field = value.parse()?,
            "matrix" => shape = Some(parse_shape(value)?),
            _ => return Err(AlgebraError::InvalidInput(format!("unknown ring key `{key}`"))),
        }
    }
    match (n, shape) {
        (Some(n), Some((r, c))) if n != r * c => Err(AlgebraError::InvalidInput(format!(
            "n={n} does not match matrix={r}x{c}"
        ))),
        (_, Some((r, c))) => Ok(Ring::matrix(r, c, field)),
        (Some(n), None) => Ok(Ring::flat(n, field)),
        (None, None) => Err(AlgebraError::InvalidInput("ring header needs n=<vars>".into())),
    }
}

/// `RxC`, e.g. `4x3`.
pub fn parse_shape(text: &str) -> Result<(usize, usize)> {
    let bad = || AlgebraError::InvalidInput(format!("bad matrix shape `{text}`"));
    let (r, c) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if r == 0 || c == 0 {
        return Err(bad());
    }
    Ok((r, c))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Parse a whole file. `ring` overrides (or replaces a missing) header.
pub fn parse_polys(text: &str, ring: Option<Ring>) -> Result<(Ring, Vec<MultiPoly>)> {
    let mut lines = content_lines(text).peekable();
    let header = match lines.peek() {
        Some(l) if l.starts_with("ring") => {
            let r = parse_ring_spec(l)?;
            lines.next();
            Some(r)
        }
        _ => None,
    };
    let ring = ring
        .or(header)
        .ok_or_else(|| AlgebraError::InvalidInput("missing ring header".into()))?;
    let polys = lines.map(|l| parse_poly(l, ring)).collect::<Result<Vec<_>>>()?;
    Ok((ring, polys))
}

pub fn parse_ideal(text: &str, ring: Option<Ring>) -> Result<Ideal> {
    let (ring, polys) = parse_polys(text, ring)?;
    Ideal::new(ring, polys)
}

/// Write polynomials in the file format read by [`parse_polys`].
pub fn export_polys(ring: Ring, polys: &[MultiPoly]) -> String {
    let mut out = format!("{ring}\n");
    for p in polys {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

pub fn export_ideal(ideal: &Ideal) -> String {
    export_polys(ideal.ring(), ideal.generators())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_comments() {
        let text = "# twisted cubic\nring n=3 field=fp:7\nx1^2 - x2  # first\n\nx1^3 - x3\n";
        let (ring, polys) = parse_polys(text, None).unwrap();
        assert_eq!(ring, Ring::flat(3, Field::Prime(7)));
        assert_eq!(polys.len(), 2);
        assert_eq!(polys[1].to_string(), "x1^3 - x3");
    }

    #[test]
    fn matrix_rings_round_trip() {
        let r = parse_ring_spec("n=12 field=q matrix=4x3").unwrap();
        assert_eq!(r, Ring::matrix(4, 3, Field::Rational));
        let p = parse_poly("x2_1*x3_2*x4_3 - x2_1*x3_3*x4_2", r).unwrap();
        let text = export_polys(r, &[p.clone()]);
        assert_eq!(parse_polys(&text, None).unwrap(), (r, vec![p]));
        assert!(parse_ring_spec("n=11 matrix=4x3").is_err());
    }

    #[test]
    fn missing_header() {
        assert!(parse_polys("x1\n", None).is_err());
        let r = Ring::flat(1, Field::Rational);
        assert_eq!(parse_polys("x1\n", Some(r)).unwrap().1.len(), 1);
        assert!(parse_ring_spec("n=3 field=fp:8").is_err());
    }
}
