//! Plain-text formats: a complex is a listing of maximal simplices by
//! vertex indices with an optional relative block; cochain values bind a
//! simplex to an exact rational written `p/q`.
//!
//! ```text
//! # hexagon with one marked edge
//! simplex 0 1
//! simplex 1 2
//! relative 0 1
//! ```

use std::str::FromStr;

use num_rational::BigRational;

use crate::complex::{Cochain, Rat, SimplicialPair};
use crate::error::{Error, Result};

pub fn parse_complex(text: &str) -> Result<SimplicialPair> {
    let mut maximal = Vec::new();
    let mut relative = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let vertices: Vec<usize> = parts
            .map(|p| {
                p.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad vertex `{p}`", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        if vertices.is_empty() {
            return Err(Error::Parse(format!(
                "line {}: `{keyword}` needs vertex indices",
                lineno + 1
            )));
        }
        match keyword {
            "simplex" => maximal.push(vertices),
            "relative" => relative.push(vertices),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown keyword `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    if maximal.is_empty() {
        return Err(Error::Parse("no simplices".into()));
    }
    SimplicialPair::new(&maximal, &relative)
}

pub fn complex_to_text(pair: &SimplicialPair) -> String {
    // Emit every simplex (closure is idempotent) with the relative block.
    let mut out = String::new();
    for dim in (0..=pair.top_dimension()).rev() {
        for s in pair.simplices(dim) {
            let words: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str("simplex ");
            out.push_str(&words.join(" "));
            out.push('\n');
        }
    }
    for dim in (0..=pair.top_dimension()).rev() {
        for (i, s) in pair.simplices(dim).iter().enumerate() {
            if pair.is_relative(dim, i) {
                let words: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                out.push_str("relative ");
                out.push_str(&words.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

/// Parses lines of the form `v0 v1 ... vk = p/q` into a cochain of the
/// given dimension over the pair.
pub fn parse_cochain(pair: &SimplicialPair, dim: usize, text: &str) -> Result<Cochain> {
    let mut out = Cochain::zero(dim);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected `v0 .. vk = p/q`", lineno + 1))
        })?;
        let mut vertices: Vec<usize> = lhs
            .split_whitespace()
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad vertex `{p}`", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        vertices.sort_unstable();
        let value = parse_rational(rhs.trim())
            .ok_or_else(|| Error::Parse(format!("line {}: bad rational `{rhs}`", lineno + 1)))?;
        let (d, idx) = pair.lookup(&vertices).ok_or_else(|| {
            Error::Parse(format!("line {}: unknown simplex {vertices:?}", lineno + 1))
        })?;
        if d != dim {
            return Err(Error::Parse(format!(
                "line {}: simplex has dimension {d}, expected {dim}",
                lineno + 1
            )));
        }
        out.set(idx, &out.get(idx) + &value);
    }
    Ok(out)
}

pub fn parse_rational(text: &str) -> Option<Rat> {
    if let Some((num, den)) = text.split_once('/') {
        let n = num_bigint::BigInt::from_str(num.trim()).ok()?;
        let d = num_bigint::BigInt::from_str(den.trim()).ok()?;
        if d == 0.into() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n = num_bigint::BigInt::from_str(text.trim()).ok()?;
        Some(BigRational::from_integer(n))
    }
}

pub fn cochain_to_text(pair: &SimplicialPair, c: &Cochain) -> String {
    let mut out = String::new();
    for (&idx, v) in c.iter() {
        let words: Vec<String> = pair.simplices(c.dim)[idx]
            .iter()
            .map(|x| x.to_string())
            .collect();
        out.push_str(&format!("{} = {}\n", words.join(" "), v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let text = "# demo\nsimplex 0 1 2\nsimplex 1 2 3\nrelative 0 1\n";
        let pair = parse_complex(text).unwrap();
        let printed = complex_to_text(&pair);
        let reparsed = parse_complex(&printed).unwrap();
        assert_eq!(pair, reparsed);
    }

    #[test]
    fn rejects_unknown_keyword() {
        assert!(matches!(parse_complex("face 0 1\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn cochain_parsing() {
        let pair = parse_complex("simplex 0 1 2\n").unwrap();
        let c = parse_cochain(&pair, 1, "0 1 = 3/2\n1 2 = -1\n").unwrap();
        let (_, idx) = pair.lookup(&[0, 1]).unwrap();
        assert_eq!(c.get(idx), Rat::new(3.into(), 2.into()));
        let printed = cochain_to_text(&pair, &c);
        let reparsed = parse_cochain(&pair, 1, &printed).unwrap();
        assert_eq!(c, reparsed);
    }
}
