//! One-sided annihilators, insulator predicates and searches, and
//! bounded-degree polynomial annihilators in (hR, alpha).
//!
//! Annihilators come from two independent backends: element enumeration
//! (any ring) and nullspaces of stacked multiplication matrices over F_p
//! (algebra-backed rings). Both return identical sets wherever both run;
//! the dispatcher picks the cheaper one and debug builds cross-check.

use crate::endo::{check_pair, Endomorphism, ImageQuery};
use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::hurwitz::{binom_mod, hp_mul, HPoly};
use crate::ring::{left_mul_matrix, right_mul_matrix, Elem, FiniteRing};
use crate::sets::{ElementSet, SetTag};
use serde::Serialize;

/// Which side annihilates: left means { r : r f = 0 for all f in F }.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Enumeration backend: scan the whole element universe.
pub fn annihilator_enum(ring: &FiniteRing, f: &ElementSet, side: Side) -> Result<ElementSet> {
    f.require_nonempty()?;
    let zero = ring.zero();
    let mut out = Vec::new();
    for r in ring.elements() {
        let kills = f.members().iter().all(|&x| match side {
            Side::Left => ring.mul(r, x) == zero,
            Side::Right => ring.mul(x, r) == zero,
        });
        if kills {
            out.push(r);
        }
    }
    Ok(ElementSet::from_members(ring, out)?.with_tag(ideal_tag(side)))
}

/// Nullspace backend: the left annihilator is the kernel of the stacked
/// right-multiplication matrices (and symmetrically on the right).
pub fn annihilator_nullspace(ring: &FiniteRing, f: &ElementSet, side: Side) -> Result<ElementSet> {
    f.require_nonempty()?;
    let alg = ring
        .algebra
        .as_ref()
        .ok_or_else(|| Error::Precondition("nullspace backend needs an algebra-backed ring".into()))?;
    let mut stacked = FpMat::zeros(alg.p, 0, alg.dim);
    for x in f.nonzero_members() {
        let m = match side {
            Side::Left => right_mul_matrix(ring, x),
            Side::Right => left_mul_matrix(ring, x),
        };
        stacked = stacked.vstack(&m);
    }
    if stacked.rows() == 0 {
        // F = {0}: everything annihilates
        return Ok(ElementSet::full(ring).with_tag(ideal_tag(side)));
    }
    Ok(ElementSet::from_basis(ring, stacked.nullspace()).with_tag(ideal_tag(side)))
}

fn ideal_tag(side: Side) -> SetTag {
    match side {
        Side::Left => SetTag::LeftIdeal,
        Side::Right => SetTag::RightIdeal,
    }
}

/// Below this size the full element scan beats building and reducing the
/// stacked matrices.
const ENUM_FASTER_LIMIT: u64 = 512;

/// Backend dispatch, cheapest first; debug builds cross-check both
/// backends on small rings.
pub fn annihilator(ring: &FiniteRing, f: &ElementSet, side: Side) -> Result<ElementSet> {
    let out = if ring.is_algebra() && ring.size() > ENUM_FASTER_LIMIT {
        annihilator_nullspace(ring, f, side)?
    } else {
        annihilator_enum(ring, f, side)?
    };
    #[cfg(debug_assertions)]
    if ring.is_algebra() && ring.size() <= crate::ring::TABLE_LIMIT {
        let check = if ring.size() > ENUM_FASTER_LIMIT {
            annihilator_enum(ring, f, side)?
        } else {
            annihilator_nullspace(ring, f, side)?
        };
        debug_assert_eq!(out.members(), check.members(), "annihilator backends disagree");
    }
    Ok(out)
}

pub fn left_annihilator(ring: &FiniteRing, f: &ElementSet) -> Result<ElementSet> {
    annihilator(ring, f, Side::Left)
}

pub fn right_annihilator(ring: &FiniteRing, f: &ElementSet) -> Result<ElementSet> {
    annihilator(ring, f, Side::Right)
}

/// A finite set whose one-sided annihilator has been computed to be zero,
/// together with enough data to re-run the check.
#[derive(Clone, Debug, Serialize)]
pub struct InsulatorCertificate {
    pub side: Side,
    pub members: Vec<Elem>,
    pub cardinality: usize,
    /// Annihilator recomputed at emission; always {0} for a valid
    /// certificate.
    pub annihilator_is_zero: bool,
    /// Set when the search fell back to the full input set.
    pub fallback_full_set: bool,
}

impl InsulatorCertificate {
    /// Recompute the annihilator from scratch.
    pub fn reverify(&self, ring: &FiniteRing) -> Result<bool> {
        let f = ElementSet::from_members(ring, self.members.clone())?;
        Ok(annihilator(ring, &f, self.side)?.is_zero_only())
    }
}

/// True (with a certificate) iff the annihilator of F on the given side is
/// exactly {0}.
pub fn is_insulator(
    ring: &FiniteRing,
    f: &ElementSet,
    side: Side,
) -> Result<(bool, Option<InsulatorCertificate>)> {
    f.require_nonempty()?;
    let ann = annihilator(ring, f, side)?;
    if ann.is_zero_only() {
        Ok((
            true,
            Some(InsulatorCertificate {
                side,
                members: f.members().to_vec(),
                cardinality: f.len(),
                annihilator_is_zero: true,
                fallback_full_set: false,
            }),
        ))
    } else {
        Ok((false, None))
    }
}

/// Outcome of searching an ideal for an insulator.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(InsulatorCertificate),
    /// No subset of I can insulate: a nonzero element annihilates all of I.
    ProvedAbsent { witness: Elem },
}

/// Search budget for subset enumeration.
const SEARCH_BUDGET: u64 = 1 << 22;

/// Decide whether the ideal I contains an insulator, and produce a
/// minimal-cardinality certificate when it does.
///
/// Existence is decided exactly first: a finite I contains an insulator iff
/// the annihilator of I itself is {0} (annihilators are antitone, and I is
/// its own finite subset). Only the minimal certificate is searched, by
/// increasing size in lexicographic order over canonical element indices.
/// Falls back to F = I when nothing within `max_size` (or budget) is found.
pub fn insulator_search(
    ring: &FiniteRing,
    ideal: &ElementSet,
    side: Side,
    max_size: usize,
) -> Result<SearchOutcome> {
    ideal.require_nonzero()?;
    let full_ann = annihilator(ring, ideal, side)?;
    if !full_ann.is_zero_only() {
        let witness = full_ann.nonzero_members().next().unwrap();
        return Ok(SearchOutcome::ProvedAbsent { witness });
    }
    let candidates: Vec<Elem> = ideal.nonzero_members().collect();
    let everything: Vec<Elem> = ring.elements().collect();
    let mut budget = SEARCH_BUDGET;
    for size in 1..=max_size.min(candidates.len()) {
        if let Some(found) = dfs_insulator(
            ring,
            side,
            &candidates,
            &everything,
            &mut Vec::new(),
            0,
            size,
            &mut budget,
        ) {
            return Ok(SearchOutcome::Found(InsulatorCertificate {
                side,
                cardinality: found.len(),
                members: found,
                annihilator_is_zero: true,
                fallback_full_set: false,
            }));
        }
        if budget == 0 {
            break;
        }
    }
    Ok(SearchOutcome::Found(InsulatorCertificate {
        side,
        members: ideal.members().to_vec(),
        cardinality: ideal.len(),
        annihilator_is_zero: true,
        fallback_full_set: true,
    }))
}

/// Depth-first lexicographic scan of exactly-`size` subsets. The running
/// prefix annihilator is filtered down with each extension (it can only
/// shrink), so the full-size test is just a length check.
#[allow(clippy::too_many_arguments)]
fn dfs_insulator(
    ring: &FiniteRing,
    side: Side,
    candidates: &[Elem],
    prefix_ann: &[Elem],
    prefix: &mut Vec<Elem>,
    from: usize,
    size: usize,
    budget: &mut u64,
) -> Option<Vec<Elem>> {
    let remaining = size - prefix.len();
    let zero = ring.zero();
    for i in from..candidates.len() {
        if candidates.len() - i < remaining {
            break;
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let x = candidates[i];
        let narrowed: Vec<Elem> = prefix_ann
            .iter()
            .copied()
            .filter(|&z| match side {
                Side::Left => ring.mul(z, x) == zero,
                Side::Right => ring.mul(x, z) == zero,
            })
            .collect();
        prefix.push(x);
        if remaining == 1 {
            if narrowed == [zero] {
                return Some(prefix.clone());
            }
        } else if let Some(found) =
            dfs_insulator(ring, side, candidates, &narrowed, prefix, i + 1, size, budget)
        {
            return Some(found);
        }
        prefix.pop();
    }
    None
}

/// r_R(F) intersected with alpha^n(R). With `Eventual`, intersects with the
/// stabilized image and reports the smallest n at which the intersection
/// already equals its eventual value.
pub fn ann_meet_image(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    f: &ElementSet,
    query: ImageQuery,
) -> Result<(ElementSet, usize)> {
    check_pair(ring, alpha);
    f.require_nonempty()?;
    let r_ann = right_annihilator(ring, f)?;
    match query {
        ImageQuery::Power(n) => {
            let idx = (n as usize).min(alpha.stabilization_index());
            Ok((r_ann.intersect(alpha.image(idx)), idx))
        }
        ImageQuery::Eventual => {
            let (eventual, nstar) = alpha.eventual_image();
            let target = r_ann.intersect(eventual);
            for n in 0..=nstar {
                if r_ann.intersect(alpha.image(n)) == target {
                    return Ok((target, n));
                }
            }
            Ok((target, nstar))
        }
    }
}

/// All polynomials with support in {0..D} annihilating a finite family on
/// one side. An empty result certifies insulation **up to degree D only**;
/// higher degrees are never examined.
#[derive(Clone, Debug)]
pub struct BoundedAnnihilator {
    pub side: Side,
    pub degree_bound: u64,
    /// Nonzero annihilating polynomials in canonical order, when the
    /// solution set was small enough to materialize.
    pub members: Vec<HPoly>,
    pub nonzero_count: u128,
    pub materialized: bool,
    /// Nullspace basis as polynomials (nullspace path only).
    pub basis: Vec<HPoly>,
}

impl BoundedAnnihilator {
    pub fn is_empty(&self) -> bool {
        self.nonzero_count == 0
    }
}

const MATERIALIZE_LIMIT: u128 = 4096;
const ENUM_BUDGET: u128 = 1 << 22;

/// Bounded-degree polynomial annihilator of a family of skew Hurwitz
/// polynomials: nullspace of the linear system over coefficient vectors on
/// algebra rings, exhaustive coefficient enumeration elsewhere.
pub fn hp_ann_bounded(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    fhat: &[HPoly],
    side: Side,
    degree_bound: u64,
) -> Result<BoundedAnnihilator> {
    check_pair(ring, alpha);
    if fhat.is_empty() {
        return Err(Error::Precondition("empty polynomial family".into()));
    }
    for f in fhat {
        if f.is_zero() {
            return Err(Error::Precondition(
                "polynomial family members must be nonzero".into(),
            ));
        }
        if f.ring_key() != ring.key() {
            return Err(Error::RingMismatch(
                ring.key().to_string(),
                f.ring_key().to_string(),
            ));
        }
    }
    if ring.is_algebra() {
        hp_ann_bounded_nullspace(ring, alpha, fhat, side, degree_bound)
    } else {
        hp_ann_bounded_enum(ring, alpha, fhat, side, degree_bound)
    }
}

/// Exhaustive coefficient-tuple scan; exact on any backend but exponential
/// in the degree bound.
pub fn hp_ann_bounded_enum(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    fhat: &[HPoly],
    side: Side,
    degree_bound: u64,
) -> Result<BoundedAnnihilator> {
    let slots = degree_bound + 1;
    let total = (ring.size() as u128)
        .checked_pow(slots as u32)
        .unwrap_or(u128::MAX);
    if total > ENUM_BUDGET {
        return Err(Error::Budget(format!(
            "enumerating |R|^(D+1) = {total} candidate polynomials exceeds the budget"
        )));
    }
    let mut members = Vec::new();
    let mut counter = vec![0u32; slots as usize];
    'outer: loop {
        let pairs: Vec<(u64, Elem)> = counter
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(d, &c)| (d as u64, Elem(c)))
            .collect();
        if !pairs.is_empty() {
            let g = HPoly::make(ring, pairs)?;
            if annihilates(ring, alpha, &g, fhat, side)? {
                members.push(g);
            }
        }
        let mut k = 0usize;
        loop {
            if k == counter.len() {
                break 'outer;
            }
            counter[k] += 1;
            if counter[k] as u64 == ring.size() {
                counter[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
    }
    members.sort();
    Ok(BoundedAnnihilator {
        side,
        degree_bound,
        nonzero_count: members.len() as u128,
        materialized: true,
        members,
        basis: Vec::new(),
    })
}

fn annihilates(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    g: &HPoly,
    fhat: &[HPoly],
    side: Side,
) -> Result<bool> {
    for f in fhat {
        let prod = match side {
            Side::Left => hp_mul(ring, alpha, g, f)?,
            Side::Right => hp_mul(ring, alpha, f, g)?,
        };
        if !prod.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Linear-system backend over F_p.
pub fn hp_ann_bounded_nullspace(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    fhat: &[HPoly],
    side: Side,
    degree_bound: u64,
) -> Result<BoundedAnnihilator> {
    let alg = ring
        .algebra
        .as_ref()
        .ok_or_else(|| Error::Precondition("nullspace backend needs an algebra-backed ring".into()))?;
    let (p, dim) = (alg.p, alg.dim);
    let slots = (degree_bound + 1) as usize;
    let cols = slots * dim;
    let alpha_mat = alpha
        .matrix()
        .expect("algebra rings always carry the endomorphism matrix");
    // alpha^k as matrices, up to the largest twist the system can need
    let max_delta = fhat.iter().filter_map(|f| f.delta()).max().unwrap_or(0);
    let max_k = degree_bound.max(max_delta) as usize;
    let mut alpha_pows = Vec::with_capacity(max_k + 1);
    alpha_pows.push(FpMat::identity(p, dim));
    for k in 1..=max_k {
        alpha_pows.push(alpha_mat.mul_mat(&alpha_pows[k - 1]));
    }
    let mut system = FpMat::zeros(p, 0, cols);
    for f in fhat {
        let delta = f.delta().unwrap();
        for n in 0..=(degree_bound + delta) {
            // block of `dim` equations: the product coefficient at degree n
            // must vanish
            let mut block = FpMat::zeros(p, dim, cols);
            for (k_deg, coeff) in f.coeffs() {
                let contribution = match side {
                    // g * f: term C(n, j) g(j) alpha^j(f(n-j)) with j = n - k_deg
                    Side::Left => {
                        let Some(j) = n.checked_sub(k_deg) else { continue };
                        if j > degree_bound {
                            continue;
                        }
                        let b = binom_mod(n, j, p)?;
                        if b == 0 {
                            continue;
                        }
                        let twisted = alpha.apply_pow(coeff, j);
                        Some((j as usize, right_mul_matrix(ring, twisted).scale(b)))
                    }
                    // f * g: term C(n, k) f(k) alpha^k(g(n-k)) with k = k_deg
                    Side::Right => {
                        let Some(j) = n.checked_sub(k_deg) else { continue };
                        if j > degree_bound {
                            continue;
                        }
                        let b = binom_mod(n, k_deg, p)?;
                        if b == 0 {
                            continue;
                        }
                        let m = left_mul_matrix(ring, coeff)
                            .mul_mat(&alpha_pows[k_deg as usize])
                            .scale(b);
                        Some((j as usize, m))
                    }
                };
                if let Some((block_col, m)) = contribution {
                    for r in 0..dim {
                        for c in 0..dim {
                            let cur = block.at(r, block_col * dim + c);
                            block.set(r, block_col * dim + c, (cur + m.at(r, c)) % p);
                        }
                    }
                }
            }
            system = system.vstack(&block);
        }
    }
    let ns = system.nullspace();
    let nullity = ns.rows();
    let basis: Vec<HPoly> = (0..nullity)
        .map(|i| vec_to_poly(ring, ns.row(i), dim))
        .collect::<Result<_>>()?;
    let total = (p as u128).pow(nullity as u32);
    let nonzero_count = total - 1;
    let (members, materialized) = if nonzero_count <= MATERIALIZE_LIMIT {
        let mut members: Vec<HPoly> = ns
            .span_vectors()
            .iter()
            .map(|v| vec_to_poly(ring, v, dim))
            .collect::<Result<_>>()?;
        members.retain(|g| !g.is_zero());
        members.sort();
        members.dedup();
        (members, true)
    } else {
        (Vec::new(), false)
    };
    Ok(BoundedAnnihilator {
        side,
        degree_bound,
        members,
        nonzero_count,
        materialized,
        basis,
    })
}

fn vec_to_poly(ring: &FiniteRing, v: &[u64], dim: usize) -> Result<HPoly> {
    let pairs: Vec<(u64, Elem)> = v
        .chunks(dim)
        .enumerate()
        .map(|(deg, chunk)| (deg as u64, ring.vec_to_elem(chunk)))
        .filter(|&(_, e)| e != ring.zero())
        .collect();
    HPoly::make(ring, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::make_ring;
    use crate::ring::{EndoSelector, Family, RingSpec};

    fn build(f: Family, e: EndoSelector) -> (FiniteRing, Endomorphism) {
        make_ring(&RingSpec::new(f, e)).unwrap()
    }

    fn set(ring: &FiniteRing, members: Vec<Elem>) -> ElementSet {
        ElementSet::from_members(ring, members).unwrap()
    }

    #[test]
    fn unity_annihilator_is_zero_both_sides() {
        for (ring, _) in [
            build(Family::ZMod { n: 6 }, EndoSelector::Identity),
            build(Family::GaloisField { p: 2, d: 2 }, EndoSelector::Identity),
            build(Family::MatrixRing { p: 2, s: 2 }, EndoSelector::Identity),
        ] {
            let one = set(&ring, vec![ring.one()]);
            assert!(left_annihilator(&ring, &one).unwrap().is_zero_only());
            assert!(right_annihilator(&ring, &one).unwrap().is_zero_only());
        }
    }

    #[test]
    fn zmod6_annihilators_match_enumeration() {
        let (r, _) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let l = left_annihilator(&r, &set(&r, vec![Elem(2)])).unwrap();
        assert_eq!(l.members(), &[Elem(0), Elem(3)]);
        let rr = right_annihilator(&r, &set(&r, vec![Elem(3)])).unwrap();
        assert_eq!(rr.members(), &[Elem(0), Elem(2), Elem(4)]);
    }

    #[test]
    fn monomial_annihilators_span_expected_subspace() {
        let (r, _) = build(Family::MonomialAlgebra { g: 2, p: 2 }, EndoSelector::Identity);
        let x0 = r.vec_to_elem(&[0, 1, 0, 0]);
        let x1 = r.vec_to_elem(&[0, 0, 1, 0]);
        let x0x1 = r.vec_to_elem(&[0, 0, 0, 1]);
        let expect = ElementSet::additive_closure(&r, &[x0, x1, x0x1]).unwrap();
        let l = left_annihilator(&r, &set(&r, vec![x0])).unwrap();
        assert_eq!(l.members(), expect.members());
        let rt = right_annihilator(&r, &set(&r, vec![x1])).unwrap();
        assert_eq!(rt.members(), expect.members());
    }

    #[test]
    fn backends_agree_on_all_small_subsets() {
        let (r, _) = build(Family::MonomialAlgebra { g: 2, p: 2 }, EndoSelector::Identity);
        let elems: Vec<Elem> = r.elements().collect();
        for &a in &elems {
            for &b in &elems {
                let f = set(&r, vec![a, b]);
                if f.is_empty() {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    let e = annihilator_enum(&r, &f, side).unwrap();
                    let n = annihilator_nullspace(&r, &f, side).unwrap();
                    assert_eq!(e.members(), n.members());
                }
            }
        }
    }

    #[test]
    fn annihilator_of_span_equals_annihilator_of_set() {
        let (r, _) = build(Family::MonomialAlgebra { g: 2, p: 2 }, EndoSelector::Identity);
        let x0 = r.vec_to_elem(&[0, 1, 0, 0]);
        let x1 = r.vec_to_elem(&[0, 0, 1, 0]);
        let f = set(&r, vec![x0, x1]);
        let span = ElementSet::additive_closure(&r, &[x0, x1]).unwrap();
        for side in [Side::Left, Side::Right] {
            assert_eq!(
                annihilator(&r, &f, side).unwrap().members(),
                annihilator(&r, &span, side).unwrap().members()
            );
        }
    }

    #[test]
    fn matrix_pair_is_left_insulator() {
        let (r, _) = build(Family::MatrixRing { p: 2, s: 2 }, EndoSelector::Identity);
        let e11 = r.vec_to_elem(&[1, 0, 0, 0]);
        let e21 = r.vec_to_elem(&[0, 0, 1, 0]);
        let (ok, cert) = is_insulator(&r, &set(&r, vec![e11, e21]), Side::Left).unwrap();
        assert!(ok);
        assert!(cert.unwrap().reverify(&r).unwrap());
        // {2} mod 6 is not an insulator: 3 annihilates it
        let (r6, _) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let (ok, cert) = is_insulator(&r6, &set(&r6, vec![Elem(2)]), Side::Left).unwrap();
        assert!(!ok && cert.is_none());
    }

    #[test]
    fn search_returns_unity_singleton_on_full_ring() {
        let (r, _) = build(Family::MatrixRing { p: 2, s: 2 }, EndoSelector::Identity);
        let outcome = insulator_search(&r, &ElementSet::full(&r), Side::Left, 3).unwrap();
        match outcome {
            SearchOutcome::Found(c) => {
                assert_eq!(c.members, vec![r.one()]);
                assert!(!c.fallback_full_set);
            }
            _ => panic!("expected a certificate"),
        }
    }

    #[test]
    fn search_proves_absence_in_even_residues_mod_six() {
        let (r, _) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let ideal = set(&r, vec![Elem(0), Elem(2), Elem(4)]);
        for side in [Side::Left, Side::Right] {
            match insulator_search(&r, &ideal, side, 3).unwrap() {
                SearchOutcome::ProvedAbsent { witness } => assert_eq!(witness, Elem(3)),
                _ => panic!("expected proved absence"),
            }
        }
    }

    #[test]
    fn search_finds_lex_first_minimal_pair_in_principal_ideal() {
        // the left ideal R*E11 of M_2(F_2) contains no singleton insulator;
        // the reported pair must match a brute-force lexicographic scan
        let (r, _) = build(Family::MatrixRing { p: 2, s: 2 }, EndoSelector::Identity);
        let e11 = r.vec_to_elem(&[1, 0, 0, 0]);
        let members: Vec<Elem> = r.elements().map(|x| r.mul(x, e11)).collect();
        let ideal = set(&r, members);
        assert_eq!(ideal.len(), 4);

        let cands: Vec<Elem> = ideal.nonzero_members().collect();
        let mut oracle: Option<Vec<Elem>> = None;
        'sizes: for s in 1..=2usize {
            let combos: Vec<Vec<Elem>> = match s {
                1 => cands.iter().map(|&c| vec![c]).collect(),
                _ => {
                    let mut v = Vec::new();
                    for i in 0..cands.len() {
                        for j in i + 1..cands.len() {
                            v.push(vec![cands[i], cands[j]]);
                        }
                    }
                    v
                }
            };
            for f in combos {
                let fs = set(&r, f.clone());
                if annihilator_enum(&r, &fs, Side::Left).unwrap().is_zero_only() {
                    oracle = Some(f);
                    break 'sizes;
                }
            }
        }
        let oracle = oracle.expect("a pair insulator exists");
        assert_eq!(oracle.len(), 2);

        match insulator_search(&r, &ideal, Side::Left, 3).unwrap() {
            SearchOutcome::Found(c) => {
                assert_eq!(c.members, oracle);
                assert_eq!(c.cardinality, 2);
            }
            _ => panic!("expected a certificate"),
        }
    }

    #[test]
    fn meet_image_reduces_to_plain_annihilator_under_identity() {
        let (r, a) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let f = set(&r, vec![Elem(3)]);
        let (m, n) = ann_meet_image(&r, &a, &f, ImageQuery::Power(5)).unwrap();
        assert_eq!(m.members(), right_annihilator(&r, &f).unwrap().members());
        assert_eq!(n, 0);
    }

    #[test]
    fn meet_image_on_shift_examples() {
        let (r, a) = build(Family::MonomialAlgebra { g: 3, p: 2 }, EndoSelector::Shift);
        let x0 = r.vec_to_elem(&[0, 1, 0, 0, 0, 0, 0, 0]);
        let x0x1 = r.vec_to_elem(&[0, 0, 0, 0, 1, 0, 0, 0]);
        let (m, _) = ann_meet_image(&r, &a, &set(&r, vec![x0x1]), ImageQuery::Power(2)).unwrap();
        assert!(m.is_zero_only());
        let (m0, _) = ann_meet_image(&r, &a, &set(&r, vec![x0]), ImageQuery::Power(0)).unwrap();
        assert!(!m0.is_zero_only());
    }

    #[test]
    fn meet_image_monotone_and_eventually_constant() {
        let (r, a) = build(Family::MonomialAlgebra { g: 3, p: 2 }, EndoSelector::Shift);
        let x0 = r.vec_to_elem(&[0, 1, 0, 0, 0, 0, 0, 0]);
        let f = set(&r, vec![x0]);
        let mut prev: Option<ElementSet> = None;
        for n in 0..=a.stabilization_index() + 2 {
            let (m, _) = ann_meet_image(&r, &a, &f, ImageQuery::Power(n as u64)).unwrap();
            if let Some(p) = &prev {
                assert!(m.is_subset_of(p));
            }
            prev = Some(m);
        }
        let (ev, n_ev) = ann_meet_image(&r, &a, &f, ImageQuery::Eventual).unwrap();
        let (at_n, _) = ann_meet_image(&r, &a, &f, ImageQuery::Power(n_ev as u64)).unwrap();
        assert_eq!(ev.members(), at_n.members());
    }

    #[test]
    fn bounded_annihilator_of_unity_family_is_empty() {
        let (r, a) = build(Family::GaloisField { p: 2, d: 2 }, EndoSelector::Frobenius);
        let h1 = HPoly::h(&r, 1).unwrap();
        for d in 0..4u64 {
            let out = hp_ann_bounded(&r, &a, std::slice::from_ref(&h1), Side::Left, d).unwrap();
            assert!(out.is_empty());
        }
    }

    #[test]
    fn bounded_annihilator_mod2_contains_h2_itself() {
        let (r, a) = build(Family::ZMod { n: 2 }, EndoSelector::Identity);
        let f = HPoly::make(&r, vec![(1, Elem(1))]).unwrap();
        let out = hp_ann_bounded(&r, &a, std::slice::from_ref(&f), Side::Left, 2).unwrap();
        // C(2,1) = 0 mod 2 frees the degree-1 slot and nothing else
        assert_eq!(out.members, vec![f]);
    }

    #[test]
    fn bounded_annihilator_backends_agree() {
        let (r, a) = build(Family::GaloisField { p: 2, d: 2 }, EndoSelector::Frobenius);
        let fam = vec![HPoly::make(&r, vec![(0, Elem(2)), (1, Elem(1))]).unwrap()];
        for side in [Side::Left, Side::Right] {
            for d in 0..=2u64 {
                let e = hp_ann_bounded_enum(&r, &a, &fam, side, d).unwrap();
                let n = hp_ann_bounded_nullspace(&r, &a, &fam, side, d).unwrap();
                assert_eq!(e.members, n.members, "side {side:?} d {d}");
            }
        }
        let (rm, am) = build(Family::MonomialAlgebra { g: 2, p: 2 }, EndoSelector::Shift);
        let x0 = rm.vec_to_elem(&[0, 1, 0, 0]);
        let fam = vec![HPoly::make(&rm, vec![(1, x0)]).unwrap()];
        for side in [Side::Left, Side::Right] {
            let e = hp_ann_bounded_enum(&rm, &am, &fam, side, 1).unwrap();
            let n = hp_ann_bounded_nullspace(&rm, &am, &fam, side, 1).unwrap();
            assert_eq!(e.members, n.members, "monomial side {side:?}");
        }
    }

    #[test]
    fn bounded_annihilator_rejects_bad_inputs() {
        let (r, a) = build(Family::ZMod { n: 2 }, EndoSelector::Identity);
        assert!(hp_ann_bounded(&r, &a, &[], Side::Left, 2).is_err());
        assert!(hp_ann_bounded(&r, &a, &[HPoly::zero(&r)], Side::Left, 2).is_err());
        // enumeration budget is enforced for non-algebra rings
        let (r6, a6) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let f = HPoly::constant(&r6, Elem(2)).unwrap();
        assert!(matches!(
            hp_ann_bounded(&r6, &a6, &[f], Side::Left, 20),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn annihilators_are_antitone() {
        let (r, _) = build(Family::ZMod { n: 6 }, EndoSelector::Identity);
        let small = set(&r, vec![Elem(2)]);
        let big = set(&r, vec![Elem(2), Elem(3)]);
        for side in [Side::Left, Side::Right] {
            let a_small = annihilator(&r, &small, side).unwrap();
            let a_big = annihilator(&r, &big, side).unwrap();
            assert!(a_big.is_subset_of(&a_small));
        }
    }
}
