//! Exact arithmetic in the skew Hurwitz polynomial ring (hR, alpha).
//!
//! A polynomial is a finite-support map from natural degrees to nonzero
//! ring elements. The product twists the right factor by powers of the
//! endomorphism and weights by binomial coefficients:
//! `(f g)(n) = sum_{k=0..n} C(n,k) f(k) alpha^k(g(n-k))`.
//!
//! Binomial coefficients are reduced into the ring through n * 1_R, using
//! Pascal's rule with every intermediate value already reduced mod the
//! characteristic, so no unbounded integers appear in any characteristic
//! (including non-prime moduli).

use crate::endo::{check_pair, Endomorphism};
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};
use crate::sets::ElementSet;
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// Skew Hurwitz polynomial over a ring; zero coefficients are never stored.
/// Ordering is lexicographic over the coefficient map and exists so result
/// sets have a canonical report order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HPoly {
    ring_key: String,
    coeffs: BTreeMap<u64, Elem>,
}

/// Support summary of a nonzero polynomial: supp(f), its minimum Pi(f),
/// its maximum Delta(f), and the coefficient at the maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportStats {
    pub supp: Vec<u64>,
    pub pi: u64,
    pub delta: u64,
    pub leading: Elem,
}

impl HPoly {
    pub fn zero(ring: &FiniteRing) -> HPoly {
        HPoly {
            ring_key: ring.key().to_string(),
            coeffs: BTreeMap::new(),
        }
    }

    /// Normalized polynomial from (degree, coefficient) pairs; degrees must
    /// be distinct, zero coefficients are dropped.
    pub fn make(ring: &FiniteRing, pairs: Vec<(u64, Elem)>) -> Result<HPoly> {
        let mut coeffs = BTreeMap::new();
        let mut seen = std::collections::HashSet::new();
        for (deg, e) in pairs {
            ring.check_elem(e)?;
            if !seen.insert(deg) {
                return Err(Error::Precondition(format!("duplicate degree {deg}")));
            }
            if e != ring.zero() {
                coeffs.insert(deg, e);
            }
        }
        Ok(HPoly {
            ring_key: ring.key().to_string(),
            coeffs,
        })
    }

    /// The degree basis element h_n: value 1 at degree n-1 (n >= 1).
    pub fn h(ring: &FiniteRing, n: u64) -> Result<HPoly> {
        if n == 0 {
            return Err(Error::Precondition("h_n is defined for n >= 1".into()));
        }
        HPoly::make(ring, vec![(n - 1, ring.one())])
    }

    /// The constant embedding h'_r: value r at degree 0.
    pub fn constant(ring: &FiniteRing, r: Elem) -> Result<HPoly> {
        HPoly::make(ring, vec![(0, r)])
    }

    pub fn ring_key(&self) -> &str {
        &self.ring_key
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: u64, ring: &FiniteRing) -> Elem {
        self.coeffs.get(&deg).copied().unwrap_or(ring.zero())
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u64, Elem)> + '_ {
        self.coeffs.iter().map(|(&d, &e)| (d, e))
    }

    pub fn support(&self) -> Vec<u64> {
        self.coeffs.keys().copied().collect()
    }

    /// All coefficients, one per support degree.
    pub fn coefficient_elems(&self) -> Vec<Elem> {
        self.coeffs.values().copied().collect()
    }

    pub fn delta(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn pi(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    fn check_same_ring(&self, other: &HPoly) -> Result<()> {
        if self.ring_key != other.ring_key {
            return Err(Error::RingMismatch(
                self.ring_key.clone(),
                other.ring_key.clone(),
            ));
        }
        Ok(())
    }
}

/// Coefficientwise sum, renormalized.
pub fn hp_add(ring: &FiniteRing, f: &HPoly, g: &HPoly) -> Result<HPoly> {
    f.check_same_ring(g)?;
    check_poly_ring(ring, f)?;
    let mut out = f.coeffs.clone();
    for (&deg, &e) in &g.coeffs {
        let s = ring.add(out.get(&deg).copied().unwrap_or(ring.zero()), e);
        if s == ring.zero() {
            out.remove(&deg);
        } else {
            out.insert(deg, s);
        }
    }
    Ok(HPoly {
        ring_key: f.ring_key.clone(),
        coeffs: out,
    })
}

pub fn hp_neg(ring: &FiniteRing, f: &HPoly) -> Result<HPoly> {
    check_poly_ring(ring, f)?;
    Ok(HPoly {
        ring_key: f.ring_key.clone(),
        coeffs: f.coeffs.iter().map(|(&d, &e)| (d, ring.neg(e))).collect(),
    })
}

/// The skew Hurwitz product. Sparse: each support pair (i, j) contributes
/// C(i+j, i) f(i) alpha^i(g(j)) at degree i + j.
pub fn hp_mul(ring: &FiniteRing, alpha: &Endomorphism, f: &HPoly, g: &HPoly) -> Result<HPoly> {
    f.check_same_ring(g)?;
    check_poly_ring(ring, f)?;
    check_pair(ring, alpha);
    let mut out: BTreeMap<u64, Elem> = BTreeMap::new();
    for (&i, &fi) in &f.coeffs {
        for (&j, &gj) in &g.coeffs {
            let b = binom_reduced(ring, i + j, i)?;
            if b == ring.zero() {
                continue;
            }
            let term = ring.mul(ring.mul(b, fi), alpha.apply_pow(gj, i));
            if term == ring.zero() {
                continue;
            }
            let deg = i + j;
            let s = ring.add(out.get(&deg).copied().unwrap_or(ring.zero()), term);
            if s == ring.zero() {
                out.remove(&deg);
            } else {
                out.insert(deg, s);
            }
        }
    }
    Ok(HPoly {
        ring_key: f.ring_key.clone(),
        coeffs: out,
    })
}

/// Support statistics; rejects the zero polynomial, whose Pi and Delta are
/// undefined.
pub fn hp_stats(ring: &FiniteRing, f: &HPoly) -> Result<SupportStats> {
    check_poly_ring(ring, f)?;
    if f.is_zero() {
        return Err(Error::Precondition(
            "the zero polynomial has no support statistics".into(),
        ));
    }
    let supp = f.support();
    let pi = supp[0];
    let delta = *supp.last().unwrap();
    Ok(SupportStats {
        supp,
        pi,
        delta,
        leading: f.coeff(delta, ring),
    })
}

/// The constant-embedding image A' = { h'_r : r in A }.
pub fn hp_embed_set(ring: &FiniteRing, a: &ElementSet) -> Result<Vec<HPoly>> {
    a.members()
        .iter()
        .map(|&r| HPoly::constant(ring, r))
        .collect()
}

fn check_poly_ring(ring: &FiniteRing, f: &HPoly) -> Result<()> {
    if ring.key() != f.ring_key {
        return Err(Error::RingMismatch(
            ring.key().to_string(),
            f.ring_key.clone(),
        ));
    }
    Ok(())
}

// ---- binomial coefficients mod the characteristic ----

/// Pascal rows per modulus; behaves as if recomputed per call.
static PASCAL: Lazy<Mutex<HashMap<u64, Vec<Vec<u64>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// C(n, k) reduced mod m via Pascal's rule; every intermediate value stays
/// below m.
pub fn binom_mod(n: u64, k: u64, m: u64) -> Result<u64> {
    if k > n {
        return Err(Error::Precondition(format!("binomial C({n},{k}) needs k <= n")));
    }
    let mut cache = PASCAL.lock().unwrap();
    let rows = cache.entry(m).or_insert_with(|| vec![vec![1 % m]]);
    while (rows.len() as u64) <= n {
        let prev = rows.last().unwrap();
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(1 % m);
        for w in prev.windows(2) {
            row.push((w[0] + w[1]) % m);
        }
        row.push(1 % m);
        rows.push(row);
    }
    Ok(rows[n as usize][k as usize])
}

/// C(n, k) * 1_R.
pub fn binom_reduced(ring: &FiniteRing, n: u64, k: u64) -> Result<Elem> {
    Ok(ring.nat_embed(binom_mod(n, k, ring.characteristic())?))
}
