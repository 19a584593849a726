//! Canonical element and polynomial literals, one grammar per ring family.
//!
//! Printed forms re-parse to the same value:
//!   - zmod: decimal residue, `5`
//!   - gf: polynomial in `w`, highest power first, `w^2+w+1`, `2w+1`
//!   - matrix: row-major bracket list, `[[1,0],[0,1]]`
//!   - monomial: sum of coefficient-word terms, `1 + x0x2`, `2x1`
//!
//! Polynomials are `deg:coeff` terms joined by ` + `; coefficients that
//! themselves contain a sum are parenthesized, e.g. `0:(w+1) + 2:1`.

use crate::error::{Error, Result};
use crate::hurwitz::HPoly;
use crate::ring::{Elem, Family, FiniteRing};

pub fn format_elem(ring: &FiniteRing, e: Elem) -> String {
    match ring.family() {
        Family::ZMod { .. } => e.0.to_string(),
        Family::GaloisField { .. } => {
            let v = ring.elem_to_vec(e);
            let mut terms: Vec<String> = Vec::new();
            for (k, &c) in v.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let t = match (k, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "w".to_string(),
                    (1, c) => format!("{c}w"),
                    (k, 1) => format!("w^{k}"),
                    (k, c) => format!("{c}w^{k}"),
                };
                terms.push(t);
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        }
        Family::MatrixRing { s, .. } => {
            let v = ring.elem_to_vec(e);
            let s = *s as usize;
            let rows: Vec<String> = (0..s)
                .map(|r| {
                    let cells: Vec<String> =
                        (0..s).map(|c| v[r * s + c].to_string()).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
        Family::MonomialAlgebra { .. } => {
            let v = ring.elem_to_vec(e);
            let mut terms: Vec<String> = Vec::new();
            for (k, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let name = ring.basis_name(k).unwrap();
                let t = if k == 0 {
                    c.to_string()
                } else if c == 1 {
                    name.to_string()
                } else {
                    format!("{c}{name}")
                };
                terms.push(t);
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        }
    }
}

pub fn parse_elem(ring: &FiniteRing, s: &str) -> Result<Elem> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    match ring.family() {
        Family::ZMod { n } => {
            let v: u64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad zmod literal `{s}`")))?;
            Ok(Elem((v % n) as u32))
        }
        Family::GaloisField { p, d } => {
            let mut v = vec![0u64; *d as usize];
            for term in s.split('+') {
                let (c, k) = parse_gf_term(term, *d as usize)?;
                v[k] = (v[k] + c) % p;
            }
            Ok(ring.vec_to_elem(&v))
        }
        Family::MatrixRing { p, s: size } => {
            let size = *size as usize;
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad matrix literal `{s}`")))?;
            let rows = split_top_level(inner, ',');
            if rows.len() != size {
                return Err(Error::Parse(format!(
                    "matrix literal has {} rows, expected {size}",
                    rows.len()
                )));
            }
            let mut v = vec![0u64; size * size];
            for (r, row) in rows.iter().enumerate() {
                let inner = row
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad matrix row `{row}`")))?;
                let cells = split_top_level(inner, ',');
                if cells.len() != size {
                    return Err(Error::Parse(format!(
                        "matrix row has {} entries, expected {size}",
                        cells.len()
                    )));
                }
                for (c, cell) in cells.iter().enumerate() {
                    let x: u64 = cell
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad matrix entry `{cell}`")))?;
                    v[r * size + c] = x % p;
                }
            }
            Ok(ring.vec_to_elem(&v))
        }
        Family::MonomialAlgebra { g, p } => {
            let alg = ring.algebra.as_ref().unwrap();
            let words = alg.words.as_ref().unwrap();
            let index_of: std::collections::HashMap<&[u32], usize> = words
                .iter()
                .enumerate()
                .map(|(i, w)| (w.as_slice(), i))
                .collect();
            let mut v = vec![0u64; alg.dim];
            for term in s.split('+') {
                let (c, word) = parse_word_term(term, *g)?;
                let idx = *index_of
                    .get(word.as_slice())
                    .ok_or_else(|| Error::Parse(format!("word `{term}` is not a basis word")))?;
                v[idx] = (v[idx] + c) % p;
            }
            Ok(ring.vec_to_elem(&v))
        }
    }
}

fn parse_gf_term(term: &str, d: usize) -> Result<(u64, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty gf term".into()));
    }
    let (coeff_str, rest) = match term.find('w') {
        Some(i) => (&term[..i], &term[i..]),
        None => (term, ""),
    };
    let coeff: u64 = if coeff_str.is_empty() {
        1
    } else {
        coeff_str
            .strip_suffix('*')
            .unwrap_or(coeff_str)
            .parse()
            .map_err(|_| Error::Parse(format!("bad gf coefficient `{coeff_str}`")))?
    };
    let power = if rest.is_empty() {
        0
    } else if rest == "w" {
        1
    } else {
        let k: usize = rest
            .strip_prefix("w^")
            .ok_or_else(|| Error::Parse(format!("bad gf term `{term}`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad gf power in `{term}`")))?;
        k
    };
    if power >= d {
        return Err(Error::Parse(format!(
            "gf power {power} exceeds extension degree bound {}",
            d - 1
        )));
    }
    Ok((coeff, power))
}

fn parse_word_term(term: &str, g: u32) -> Result<(u64, Vec<u32>)> {
    if term.is_empty() {
        return Err(Error::Parse("empty monomial term".into()));
    }
    let (coeff_str, rest) = match term.find('x') {
        Some(i) => (&term[..i], &term[i..]),
        None => (term, ""),
    };
    let coeff: u64 = if coeff_str.is_empty() {
        1
    } else {
        coeff_str
            .strip_suffix('*')
            .unwrap_or(coeff_str)
            .parse()
            .map_err(|_| Error::Parse(format!("bad monomial coefficient `{coeff_str}`")))?
    };
    let mut word = Vec::new();
    let mut rest = rest;
    while !rest.is_empty() {
        rest = rest
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("bad monomial term `{term}`")))?;
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(Error::Parse(format!("missing generator index in `{term}`")));
        }
        let idx: u32 = rest[..end]
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index in `{term}`")))?;
        if idx >= g {
            return Err(Error::Parse(format!(
                "generator x{idx} out of range for {g} generators"
            )));
        }
        word.push(idx);
        rest = &rest[end..];
    }
    if !word.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Parse(format!(
            "word `{term}` must have strictly increasing indices"
        )));
    }
    Ok((coeff, word))
}

/// Split on `sep` at zero nesting depth of `()` and `[]`.
pub fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

pub fn format_poly(ring: &FiniteRing, f: &HPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = f
        .coeffs()
        .map(|(deg, e)| {
            let lit = format_elem(ring, e);
            if split_top_level(&lit.replace(' ', ""), '+').len() > 1 {
                format!("{deg}:({})", lit.replace(' ', ""))
            } else {
                format!("{deg}:{lit}")
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn parse_poly(ring: &FiniteRing, s: &str) -> Result<HPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial literal".into()));
    }
    if compact == "0" {
        return Ok(HPoly::zero(ring));
    }
    let mut pairs: Vec<(u64, Elem)> = Vec::new();
    for term in split_top_level(&compact, '+') {
        let (deg_str, coeff_str) = term
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("polynomial term `{term}` missing `deg:coeff`")))?;
        let deg: u64 = deg_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree `{deg_str}`")))?;
        let coeff_str = coeff_str
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(coeff_str);
        let coeff = parse_elem(ring, coeff_str)?;
        pairs.push((deg, coeff));
    }
    HPoly::make(ring, pairs)
}

/// Render a set of members as a comma-joined literal list.
pub fn format_members(ring: &FiniteRing, members: &[Elem]) -> Vec<String> {
    members.iter().map(|&e| format_elem(ring, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Family, DEFAULT_ELEMENT_CAP};

    fn build(f: Family) -> FiniteRing {
        FiniteRing::build(f, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn roundtrip_all_families() {
        let rings = [
            build(Family::ZMod { n: 6 }),
            build(Family::GaloisField { p: 2, d: 2 }),
            build(Family::GaloisField { p: 3, d: 2 }),
            build(Family::MatrixRing { p: 2, s: 2 }),
            build(Family::MonomialAlgebra { g: 3, p: 2 }),
        ];
        for r in &rings {
            for e in r.elements() {
                let s = format_elem(r, e);
                let back = parse_elem(r, &s).unwrap_or_else(|err| {
                    panic!("{}: `{s}` failed to re-parse: {err}", r.key())
                });
                assert_eq!(back, e, "{}: `{s}`", r.key());
            }
        }
    }

    #[test]
    fn gf4_literals_look_right() {
        let r = build(Family::GaloisField { p: 2, d: 2 });
        assert_eq!(format_elem(&r, Elem(0)), "0");
        assert_eq!(format_elem(&r, Elem(1)), "1");
        assert_eq!(format_elem(&r, Elem(2)), "w");
        assert_eq!(format_elem(&r, Elem(3)), "w+1");
        assert_eq!(parse_elem(&r, "w + 1").unwrap(), Elem(3));
    }

    #[test]
    fn matrix_identity_literal() {
        let r = build(Family::MatrixRing { p: 2, s: 2 });
        assert_eq!(format_elem(&r, r.one()), "[[1,0],[0,1]]");
        assert_eq!(parse_elem(&r, "[[1,0],[0,1]]").unwrap(), r.one());
    }

    #[test]
    fn monomial_literal_rejects_bad_words() {
        let r = build(Family::MonomialAlgebra { g: 2, p: 2 });
        assert!(parse_elem(&r, "x1x0").is_err());
        assert!(parse_elem(&r, "x5").is_err());
        assert_eq!(
            parse_elem(&r, "1 + x0x1").unwrap(),
            r.vec_to_elem(&[1, 0, 0, 1])
        );
    }

    #[test]
    fn poly_roundtrip_with_sum_coefficients() {
        let r = build(Family::GaloisField { p: 2, d: 2 });
        let f = HPoly::make(&r, vec![(0, Elem(3)), (2, Elem(1))]).unwrap();
        let s = format_poly(&r, &f);
        assert_eq!(s, "0:(w+1) + 2:1");
        assert_eq!(parse_poly(&r, &s).unwrap(), f);
    }
}
