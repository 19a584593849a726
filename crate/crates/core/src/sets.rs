//! Finite subsets of a ring: ideals, annihilators, endomorphism images.
//!
//! Membership is an explicit sorted element list. On algebra-backed rings
//! a reduced row-echelon basis of the spanned F_p-subspace is carried
//! alongside, so predicates can pick whichever representation is cheaper;
//! both views describe the same set wherever both exist.

use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::ring::{Elem, FiniteRing};
use serde::Serialize;

/// Structural claim attached to a set; closures validate it on build.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetTag {
    AdditiveSubgroup,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    AlphaIdeal,
    Subring,
}

#[derive(Clone, Debug)]
pub struct ElementSet {
    ring_key: String,
    elems: Vec<Elem>,
    basis: Option<FpMat>,
    tag: Option<SetTag>,
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring_key == other.ring_key && self.elems == other.elems
    }
}
impl Eq for ElementSet {}

impl ElementSet {
    /// An arbitrary finite subset; duplicates collapse, order is canonical.
    pub fn from_members(ring: &FiniteRing, mut members: Vec<Elem>) -> Result<ElementSet> {
        for &m in &members {
            ring.check_elem(m)?;
        }
        members.sort();
        members.dedup();
        let basis = span_basis(ring, &members);
        Ok(ElementSet {
            ring_key: ring.key().to_string(),
            elems: members,
            basis,
            tag: None,
        })
    }

    /// The set {0}.
    pub fn zero_set(ring: &FiniteRing) -> ElementSet {
        ElementSet::from_members(ring, vec![ring.zero()]).expect("zero always valid")
    }

    /// The whole ring.
    pub fn full(ring: &FiniteRing) -> ElementSet {
        let mut s = ElementSet::from_members(ring, ring.elements().collect()).unwrap();
        s.tag = Some(SetTag::TwoSidedIdeal);
        s
    }

    /// Additive subgroup generated by `gens` (finite ring, so closing under
    /// addition alone already yields inverses).
    pub fn additive_closure(ring: &FiniteRing, gens: &[Elem]) -> Result<ElementSet> {
        let mut member = vec![false; ring.size() as usize];
        member[0] = true;
        let mut list = vec![ring.zero()];
        let mut queue: Vec<Elem> = Vec::new();
        for &g in gens {
            ring.check_elem(g)?;
            if !member[g.0 as usize] {
                member[g.0 as usize] = true;
                list.push(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            let snapshot: Vec<Elem> = list.clone();
            for s in snapshot {
                let y = ring.add(x, s);
                if !member[y.0 as usize] {
                    member[y.0 as usize] = true;
                    list.push(y);
                    queue.push(y);
                }
            }
        }
        list.sort();
        let basis = span_basis(ring, &list);
        Ok(ElementSet {
            ring_key: ring.key().to_string(),
            elems: list,
            basis,
            tag: Some(SetTag::AdditiveSubgroup),
        })
    }

    /// Build from an F_p span basis by enumerating the full span.
    pub(crate) fn from_basis(ring: &FiniteRing, basis: FpMat) -> ElementSet {
        let reduced = basis.row_space_basis();
        let mut elems: Vec<Elem> = reduced
            .span_vectors()
            .iter()
            .map(|v| ring.vec_to_elem(v))
            .collect();
        elems.sort();
        elems.dedup();
        ElementSet {
            ring_key: ring.key().to_string(),
            elems,
            basis: Some(reduced),
            tag: None,
        }
    }

    pub fn with_tag(mut self, tag: SetTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn tag(&self) -> Option<SetTag> {
        self.tag
    }

    pub fn ring_key(&self) -> &str {
        &self.ring_key
    }

    pub fn members(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when the set is exactly {0}.
    pub fn is_zero_only(&self) -> bool {
        self.elems == [Elem(0)]
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// Nonzero members, canonical order.
    pub fn nonzero_members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied().filter(|e| e.0 != 0)
    }

    /// Echelon basis of the span, when the ring has an algebra backend.
    pub fn basis(&self) -> Option<&FpMat> {
        self.basis.as_ref()
    }

    /// Span dimension over F_p, when available.
    pub fn span_dim(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.rows())
    }

    /// Sorted-list intersection.
    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.ring_key, other.ring_key, "set ring mismatch");
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.elems[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ElementSet {
            ring_key: self.ring_key.clone(),
            elems: out,
            basis: None,
            tag: None,
        }
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    /// Image of the set under an element map.
    pub fn map_through(&self, ring: &FiniteRing, f: impl Fn(Elem) -> Elem) -> ElementSet {
        let mut elems: Vec<Elem> = self.elems.iter().map(|&e| f(e)).collect();
        elems.sort();
        elems.dedup();
        let basis = span_basis(ring, &elems);
        ElementSet {
            ring_key: self.ring_key.clone(),
            elems,
            basis,
            tag: None,
        }
    }

    /// Sum of two additive subgroups: pairwise sums suffice because both
    /// operands are closed under addition.
    pub fn subgroup_sum(&self, ring: &FiniteRing, other: &ElementSet) -> ElementSet {
        assert_eq!(self.ring_key, other.ring_key, "set ring mismatch");
        let mut member = vec![false; ring.size() as usize];
        let mut out = Vec::new();
        for &a in &self.elems {
            for &b in &other.elems {
                let s = ring.add(a, b);
                if !member[s.0 as usize] {
                    member[s.0 as usize] = true;
                    out.push(s);
                }
            }
        }
        out.sort();
        let basis = span_basis(ring, &out);
        ElementSet {
            ring_key: self.ring_key.clone(),
            elems: out,
            basis,
            tag: Some(SetTag::AdditiveSubgroup),
        }
    }

    /// A small additive generating subset: scans members in canonical order
    /// and keeps those outside the closure of what was already kept. The
    /// one-sided annihilator of the result equals that of the whole set.
    pub fn additive_generators(&self, ring: &FiniteRing) -> Vec<Elem> {
        let mut kept: Vec<Elem> = Vec::new();
        let mut closed = vec![false; ring.size() as usize];
        closed[0] = true;
        let mut closure = vec![ring.zero()];
        for &x in self.nonzero_members().collect::<Vec<_>>().iter() {
            if closed[x.0 as usize] {
                continue;
            }
            kept.push(x);
            // fold x into the closure
            let mut queue = vec![x];
            closed[x.0 as usize] = true;
            closure.push(x);
            while let Some(q) = queue.pop() {
                let snapshot = closure.clone();
                for s in snapshot {
                    let y = ring.add(q, s);
                    if !closed[y.0 as usize] {
                        closed[y.0 as usize] = true;
                        closure.push(y);
                        queue.push(y);
                    }
                }
            }
        }
        kept
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.elems.is_empty() {
            Err(Error::Precondition("empty element set".into()))
        } else {
            Ok(())
        }
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.nonzero_members().next().is_none() {
            Err(Error::Precondition("set has no nonzero element".into()))
        } else {
            Ok(())
        }
    }
}

/// Echelon basis of the span of the listed members (algebra rings only).
fn span_basis(ring: &FiniteRing, members: &[Elem]) -> Option<FpMat> {
    let alg = ring.algebra.as_ref()?;
    let rows: Vec<Vec<u64>> = members.iter().map(|&e| ring.elem_to_vec(e)).collect();
    Some(FpMat::from_rows(alg.p, alg.dim, rows).row_space_basis())
}
