//! CLI expression parsing for element sets and polynomial lists.
//!
//! A set expression is either a comma-separated list of element literals
//! or a closure form evaluated through the primetest module:
//! `ideal(gens)`, `left-ideal(gens)`, `right-ideal(gens)`,
//! `alpha-ideal(gens)`.

use hurwitz_core::literal::{parse_elem, parse_poly, split_top_level};
use hurwitz_core::primetest::{close, ClosureKind};
use hurwitz_core::{Elem, ElementSet, Endomorphism, Error, FiniteRing, HPoly, Result};

fn parse_elem_list(ring: &FiniteRing, s: &str) -> Result<Vec<Elem>> {
    split_top_level(s, ',')
        .iter()
        .map(|part| parse_elem(ring, part))
        .collect()
}

pub fn parse_set_expr(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    s: &str,
) -> Result<ElementSet> {
    let trimmed = s.trim();
    let closure = [
        ("ideal(", ClosureKind::TwoSidedIdeal),
        ("left-ideal(", ClosureKind::LeftIdeal),
        ("right-ideal(", ClosureKind::RightIdeal),
        ("alpha-ideal(", ClosureKind::LeftAlphaIdeal),
    ]
    .iter()
    .find_map(|(prefix, kind)| {
        trimmed
            .strip_prefix(prefix)
            .and_then(|rest| rest.strip_suffix(')'))
            .map(|inner| (inner, *kind))
    });
    match closure {
        Some((inner, kind)) => {
            let gens = parse_elem_list(ring, inner)?;
            Ok(close(ring, Some(alpha), &gens, kind)?.set)
        }
        None => {
            let members = parse_elem_list(ring, trimmed)?;
            if members.is_empty() {
                return Err(Error::Parse("empty set expression".into()));
            }
            ElementSet::from_members(ring, members)
        }
    }
}

/// Semicolon-separated polynomial literals.
pub fn parse_poly_list(ring: &FiniteRing, s: &str) -> Result<Vec<HPoly>> {
    s.split(';')
        .map(|part| parse_poly(ring, part))
        .collect()
}
