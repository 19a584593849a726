//! Unital ring endomorphisms with cached injectivity and image-chain data.
//!
//! Construction validates the laws and fails rather than returning an
//! unchecked map: alpha(1) = 1, additivity and multiplicativity. On the
//! algebra families additivity is structural (the map is F_p-linear) and
//! multiplicativity on all basis pairs proves it everywhere by bilinearity;
//! explicit tables are checked on every element pair instead and are
//! therefore restricted to rings with at most [`TABLE_LIMIT`] elements.

use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::ring::{alg_mul, Elem, EndoSelector, Family, FiniteRing, RingSpec, TABLE_LIMIT};
use crate::sets::ElementSet;

pub struct Endomorphism {
    ring_key: String,
    selector: EndoSelector,
    table: Vec<u32>,
    matrix: Option<FpMat>,
    mono: bool,
    /// Distinct images alpha^0(R) > alpha^1(R) > ... > alpha^{n*}(R); the
    /// last entry is the eventual image.
    chain: Vec<ElementSet>,
}

impl Endomorphism {
    pub fn build(ring: &FiniteRing, selector: EndoSelector) -> Result<Endomorphism> {
        let table: Vec<u32> = match &selector {
            EndoSelector::Identity => {
                let table = (0..ring.size() as u32).collect();
                let matrix = ring
                    .algebra
                    .as_ref()
                    .map(|alg| FpMat::identity(alg.p, alg.dim));
                return Ok(assemble(ring, selector, table, matrix));
            }
            EndoSelector::Frobenius => {
                let Family::GaloisField { p, .. } = *ring.family() else {
                    return Err(Error::InvalidSpec(
                        "frobenius endomorphism is only defined on gf rings".into(),
                    ));
                };
                let matrix = linear_map_from_basis_images(ring, |i| {
                    // alpha(b_i) = b_i^p
                    let mut acc = ring.one();
                    let b = basis_elem(ring, i);
                    for _ in 0..p {
                        acc = ring.mul(acc, b);
                    }
                    acc
                });
                return finish_linear(ring, selector, matrix);
            }
            EndoSelector::Shift => {
                let Family::MonomialAlgebra { g, .. } = *ring.family() else {
                    return Err(Error::InvalidSpec(
                        "shift endomorphism is only defined on monomial rings".into(),
                    ));
                };
                let alg = ring.algebra.as_ref().unwrap();
                let words = alg.words.as_ref().unwrap().clone();
                let index_of: std::collections::HashMap<Vec<u32>, usize> = words
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, w)| (w, i))
                    .collect();
                let dim = alg.dim;
                let p = alg.p;
                let mut m = FpMat::zeros(p, dim, dim);
                for (j, w) in words.iter().enumerate() {
                    if w.last().is_some_and(|&l| l == g - 1) {
                        continue; // the top generator shifts to zero
                    }
                    let shifted: Vec<u32> = w.iter().map(|&k| k + 1).collect();
                    m.set(index_of[&shifted], j, 1);
                }
                return finish_linear(ring, selector, m);
            }
            EndoSelector::Table(t) => {
                if ring.size() > TABLE_LIMIT {
                    return Err(Error::InvalidSpec(format!(
                        "explicit endomorphism tables require |R| <= {TABLE_LIMIT}"
                    )));
                }
                if t.len() as u64 != ring.size() {
                    return Err(Error::InvalidSpec(format!(
                        "endomorphism table has length {}, expected {}",
                        t.len(),
                        ring.size()
                    )));
                }
                for &img in t {
                    if img as u64 >= ring.size() {
                        return Err(Error::InvalidSpec(format!(
                            "endomorphism table image {img} out of range"
                        )));
                    }
                }
                t.clone()
            }
        };
        // explicit tables: derive the linear map from basis images (validated
        // below by the exhaustive additivity sweep)
        let matrix = ring.algebra.as_ref().map(|alg| {
            let mut m = FpMat::zeros(alg.p, alg.dim, alg.dim);
            for j in 0..alg.dim {
                let img = Elem(table[basis_elem(ring, j).0 as usize]);
                let col = ring.elem_to_vec(img);
                for (i, &c) in col.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        });
        let endo = assemble(ring, selector, table, matrix);
        endo.verify_laws_exhaustive(ring)?;
        Ok(endo)
    }

    /// Exhaustive check of alpha(1) = 1, additivity and multiplicativity
    /// over every element pair.
    pub fn verify_laws_exhaustive(&self, ring: &FiniteRing) -> Result<()> {
        let n = ring.size() as u32;
        if self.apply(ring.one()) != ring.one() {
            return Err(Error::EndoViolation("alpha(1) != 1".into()));
        }
        if self.apply(ring.zero()) != ring.zero() {
            return Err(Error::EndoViolation("alpha(0) != 0".into()));
        }
        for a in 0..n {
            let ea = Elem(a);
            let fa = self.apply(ea);
            for b in 0..n {
                let eb = Elem(b);
                let fb = self.apply(eb);
                if self.apply(ring.add(ea, eb)) != ring.add(fa, fb) {
                    return Err(Error::EndoViolation(format!("additivity fails at ({a},{b})")));
                }
                if self.apply(ring.mul(ea, eb)) != ring.mul(fa, fb) {
                    return Err(Error::EndoViolation(format!(
                        "multiplicativity fails at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ring_key(&self) -> &str {
        &self.ring_key
    }

    pub fn selector(&self) -> &EndoSelector {
        &self.selector
    }

    pub fn is_monomorphism(&self) -> bool {
        self.mono
    }

    /// Matrix over F_p of the map on the algebra basis, when available.
    pub fn matrix(&self) -> Option<&FpMat> {
        self.matrix.as_ref()
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        Elem(self.table[a.0 as usize])
    }

    /// alpha^k(a); walks the orbit with cycle detection so large k is fine.
    pub fn apply_pow(&self, a: Elem, k: u64) -> Elem {
        let mut seen: std::collections::HashMap<Elem, u64> = std::collections::HashMap::new();
        let mut path: Vec<Elem> = Vec::new();
        let mut cur = a;
        let mut step = 0u64;
        while step < k {
            if let Some(&first) = seen.get(&cur) {
                let cycle_len = step - first;
                let idx = first + (k - first) % cycle_len;
                return path[idx as usize];
            }
            seen.insert(cur, step);
            path.push(cur);
            cur = self.apply(cur);
            step += 1;
        }
        cur
    }

    /// Number of distinct images before stabilization; the chain is
    /// alpha^0(R), ..., alpha^{n*}(R) with the last entry eventual.
    pub fn stabilization_index(&self) -> usize {
        self.chain.len() - 1
    }

    /// The image alpha^n(R); n beyond the stabilization index yields the
    /// eventual image.
    pub fn image(&self, n: usize) -> &ElementSet {
        let idx = n.min(self.chain.len() - 1);
        &self.chain[idx]
    }

    /// Eventual image E together with its stabilization index n*.
    pub fn eventual_image(&self) -> (&ElementSet, usize) {
        (self.chain.last().unwrap(), self.stabilization_index())
    }

    pub fn image_chain(&self) -> &[ElementSet] {
        &self.chain
    }

    /// Image of a set under alpha^k.
    pub fn image_of_set(&self, ring: &FiniteRing, s: &ElementSet, k: u64) -> ElementSet {
        let mut cur = s.clone();
        for _ in 0..k {
            cur = cur.map_through(ring, |e| self.apply(e));
        }
        cur
    }
}

/// Request for an endomorphism image: a concrete power or the eventual one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ImageQuery {
    Power(u64),
    Eventual,
}

/// The subring alpha^n(R), or the stabilized image with its index.
pub fn endo_image(ring: &FiniteRing, alpha: &Endomorphism, q: ImageQuery) -> (ElementSet, usize) {
    check_pair(ring, alpha);
    match q {
        ImageQuery::Power(n) => {
            let idx = (n as usize).min(alpha.stabilization_index());
            (alpha.image(idx).clone(), idx)
        }
        ImageQuery::Eventual => {
            let (e, n) = alpha.eventual_image();
            (e.clone(), n)
        }
    }
}

/// alpha^k(a).
pub fn endo_apply(ring: &FiniteRing, alpha: &Endomorphism, a: Elem, k: u64) -> Result<Elem> {
    check_pair(ring, alpha);
    ring.check_elem(a)?;
    Ok(alpha.apply_pow(a, k))
}

pub(crate) fn check_pair(ring: &FiniteRing, alpha: &Endomorphism) {
    assert_eq!(
        ring.key(),
        alpha.ring_key(),
        "endomorphism belongs to a different ring"
    );
}

fn basis_elem(ring: &FiniteRing, i: usize) -> Elem {
    let alg = ring.algebra.as_ref().unwrap();
    let mut v = vec![0u64; alg.dim];
    v[i] = 1;
    ring.vec_to_elem(&v)
}

fn linear_map_from_basis_images(ring: &FiniteRing, img: impl Fn(usize) -> Elem) -> FpMat {
    let alg = ring.algebra.as_ref().unwrap();
    let mut m = FpMat::zeros(alg.p, alg.dim, alg.dim);
    for j in 0..alg.dim {
        let col = ring.elem_to_vec(img(j));
        for (i, &c) in col.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

fn finish_linear(ring: &FiniteRing, selector: EndoSelector, m: FpMat) -> Result<Endomorphism> {
    let alg = ring.algebra.as_ref().unwrap();
    // alpha(1) = 1
    if m.mul_vec(&alg.unity_vec) != alg.unity_vec {
        return Err(Error::EndoViolation("alpha(1) != 1".into()));
    }
    // multiplicativity on all basis pairs; additivity is structural
    for i in 0..alg.dim {
        let mut ei = vec![0u64; alg.dim];
        ei[i] = 1;
        let fi = m.mul_vec(&ei);
        for j in 0..alg.dim {
            let mut ej = vec![0u64; alg.dim];
            ej[j] = 1;
            let fj = m.mul_vec(&ej);
            let lhs = m.mul_vec(&alg_mul(alg, &ei, &ej));
            let rhs = alg_mul(alg, &fi, &fj);
            if lhs != rhs {
                return Err(Error::EndoViolation(format!(
                    "multiplicativity fails on basis pair ({}, {})",
                    alg.basis_names[i], alg.basis_names[j]
                )));
            }
        }
    }
    let table: Vec<u32> = ring
        .elements()
        .map(|e| ring.vec_to_elem(&m.mul_vec(&ring.elem_to_vec(e))).0)
        .collect();
    Ok(assemble(ring, selector, table, Some(m)))
}

fn assemble(
    ring: &FiniteRing,
    selector: EndoSelector,
    table: Vec<u32>,
    matrix: Option<FpMat>,
) -> Endomorphism {
    let mut hit = vec![false; ring.size() as usize];
    let mut mono = true;
    for &img in &table {
        if hit[img as usize] {
            mono = false;
            break;
        }
        hit[img as usize] = true;
    }
    let mut chain: Vec<ElementSet> = vec![ElementSet::full(ring)];
    loop {
        let last = chain.last().unwrap();
        let next = last.map_through(ring, |e| Elem(table[e.0 as usize]));
        if &next == last {
            break;
        }
        chain.push(next);
    }
    Endomorphism {
        ring_key: ring.key().to_string(),
        selector,
        table,
        matrix,
        mono,
        chain,
    }
}

/// Build a ring and its endomorphism from a spec; both are fully checked.
pub fn make_ring(spec: &RingSpec) -> Result<(FiniteRing, Endomorphism)> {
    let ring = FiniteRing::build(spec.family.clone(), spec.cap)?;
    let alpha = Endomorphism::build(&ring, spec.endo.clone())?;
    Ok((ring, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_ELEMENT_CAP;

    fn make(family: Family, endo: EndoSelector) -> (FiniteRing, Endomorphism) {
        make_ring(&RingSpec::new(family, endo)).unwrap()
    }

    #[test]
    fn identity_is_a_monomorphism_with_full_image() {
        let (r, a) = make(Family::ZMod { n: 6 }, EndoSelector::Identity);
        assert!(a.is_monomorphism());
        assert_eq!(a.stabilization_index(), 0);
        assert_eq!(a.image(5).len(), r.size() as usize);
        assert_eq!(a.apply_pow(Elem(4), 0), Elem(4));
    }

    #[test]
    fn frobenius_on_gf4_is_an_automorphism_of_order_two() {
        let (r, a) = make(Family::GaloisField { p: 2, d: 2 }, EndoSelector::Frobenius);
        assert!(a.is_monomorphism());
        let w = Elem(2);
        assert_eq!(a.apply(w), r.mul(w, w));
        assert_eq!(a.apply_pow(w, 2), w);
        // exhaustive law check of the squaring map
        for x in r.elements() {
            assert_eq!(a.apply(x), r.mul(x, x));
            for y in r.elements() {
                assert_eq!(a.apply(r.add(x, y)), r.add(a.apply(x), a.apply(y)));
                assert_eq!(a.apply(r.mul(x, y)), r.mul(a.apply(x), a.apply(y)));
            }
        }
    }

    #[test]
    fn shift_kills_the_top_generator_and_is_never_injective() {
        for g in 2..=3u32 {
            let (r, a) = make(Family::MonomialAlgebra { g, p: 2 }, EndoSelector::Shift);
            assert!(!a.is_monomorphism());
            let dim = r.dim().unwrap();
            let mut top = vec![0u64; dim];
            top[g as usize] = 1; // basis order: 1, x0, x1, ..., x_{g-1}
            assert_eq!(a.apply(r.vec_to_elem(&top)), r.zero());
        }
    }

    #[test]
    fn shift_chain_on_three_generators() {
        let (r, a) = make(Family::MonomialAlgebra { g: 3, p: 2 }, EndoSelector::Shift);
        // alpha(x0) = x1, alpha^3(x0) = 0
        let x0 = r.vec_to_elem(&[0, 1, 0, 0, 0, 0, 0, 0]);
        let x1 = r.vec_to_elem(&[0, 0, 1, 0, 0, 0, 0, 0]);
        let x2 = r.vec_to_elem(&[0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(a.apply(x0), x1);
        assert_eq!(a.apply_pow(x0, 3), r.zero());
        // alpha^2(R) = span{1, x2}; eventual image span{1} at n* = 3
        let (img2, _) = endo_image(&r, &a, ImageQuery::Power(2));
        let expect = ElementSet::additive_closure(&r, &[r.one(), x2]).unwrap();
        assert_eq!(img2.members(), expect.members());
        let (ev, nstar) = a.eventual_image();
        assert_eq!(nstar, 3);
        assert_eq!(ev.members(), &[r.zero(), r.one()]);
    }

    #[test]
    fn image_chain_is_descending() {
        let (r, a) = make(Family::MonomialAlgebra { g: 3, p: 2 }, EndoSelector::Shift);
        let chain = a.image_chain();
        for k in 1..chain.len() {
            assert!(chain[k].is_subset_of(&chain[k - 1]));
            assert!(chain[k].len() < chain[k - 1].len());
        }
        assert!(chain.len() - 1 <= r.size() as usize);
    }

    #[test]
    fn explicit_table_must_satisfy_the_laws() {
        let r = FiniteRing::build(Family::ZMod { n: 6 }, DEFAULT_ELEMENT_CAP).unwrap();
        // identity as a table is fine
        let ok = Endomorphism::build(&r, EndoSelector::Table((0..6).collect()));
        assert!(ok.is_ok());
        // swapping 2 and 4 breaks multiplicativity
        let bad = Endomorphism::build(&r, EndoSelector::Table(vec![0, 1, 4, 3, 2, 5]));
        assert!(matches!(bad, Err(Error::EndoViolation(_))));
        // wrong length
        let bad = Endomorphism::build(&r, EndoSelector::Table(vec![0, 1]));
        assert!(matches!(bad, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn frobenius_rejected_off_gf() {
        let r = FiniteRing::build(Family::ZMod { n: 4 }, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(Endomorphism::build(&r, EndoSelector::Frobenius).is_err());
    }

    #[test]
    fn apply_pow_handles_large_exponents() {
        let (_, a) = make(Family::GaloisField { p: 2, d: 3 }, EndoSelector::Frobenius);
        let w = Elem(2);
        // frobenius has order 3 on GF(8)
        assert_eq!(a.apply_pow(w, 3), w);
        assert_eq!(a.apply_pow(w, 3_000_000_001), a.apply(w));
    }
}
