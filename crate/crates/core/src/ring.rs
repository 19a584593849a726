//! Finite coefficient rings: construction, canonical element enumeration,
//! and exact arithmetic.
//!
//! Four families are supported: integers mod n, Galois fields GF(p^d),
//! full matrix rings over a prime field, and the truncated monomial
//! algebra K<x_0..x_{G-1} | x_k x_l = 0 for k >= l>. Every element is
//! addressed by a canonical index `0..|R|-1` with index 0 the zero and
//! index 1 the unity; reports and searches iterate in this order.
//!
//! Arithmetic runs on one of two backends: direct modular arithmetic for
//! ZMod, or basis + structure constants over F_p for the algebra families.
//! Rings with at most [`TABLE_LIMIT`] elements additionally precompute full
//! add/mul tables, which makes the exhaustive law sweeps cheap.

use crate::error::{Error, Result};
use crate::fp::FpMat;
use itertools::Itertools;
use serde::Serialize;

/// Default bound on the number of elements a ring may have.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;

/// Rings up to this size get full arithmetic tables.
pub const TABLE_LIMIT: u64 = 4096;

/// A ring element, identified by its canonical index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Elem(pub u32);

/// Which ring to build, with validated parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    ZMod { n: u64 },
    GaloisField { p: u64, d: u32 },
    MatrixRing { p: u64, s: u32 },
    MonomialAlgebra { g: u32, p: u64 },
}

impl Family {
    pub fn key(&self) -> String {
        match self {
            Family::ZMod { n } => format!("zmod:{n}"),
            Family::GaloisField { p, d } => format!("gf:{p},{d}"),
            Family::MatrixRing { p, s } => format!("matrix:{p},{s}"),
            Family::MonomialAlgebra { g, p } => format!("monomial:{g},{p}"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::ZMod { .. } => "zmod",
            Family::GaloisField { .. } => "gf",
            Family::MatrixRing { .. } => "matrix",
            Family::MonomialAlgebra { .. } => "monomial",
        }
    }
}

/// Endomorphism selector attached to a ring spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoSelector {
    Identity,
    Frobenius,
    Shift,
    /// Full element map: `table[i]` is the index of the image of element `i`.
    Table(Vec<u32>),
}

impl EndoSelector {
    pub fn name(&self) -> &'static str {
        match self {
            EndoSelector::Identity => "identity",
            EndoSelector::Frobenius => "frobenius",
            EndoSelector::Shift => "shift",
            EndoSelector::Table(_) => "table",
        }
    }
}

/// Ring family + endomorphism selector + element cap.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub family: Family,
    pub endo: EndoSelector,
    pub cap: u64,
}

impl RingSpec {
    pub fn new(family: Family, endo: EndoSelector) -> Self {
        RingSpec {
            family,
            endo,
            cap: DEFAULT_ELEMENT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }
}

/// Basis + structure constants for the algebra-backed families.
pub(crate) struct AlgebraData {
    pub p: u64,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `structure[i][j]` is the product of basis elements i and j, as a
    /// sparse vector of (coordinate, coefficient) pairs.
    pub structure: Vec<Vec<Vec<(usize, u64)>>>,
    pub unity_vec: Vec<u64>,
    pub unity_raw: u64,
    /// Monomial family only: the basis word of each basis index.
    pub words: Option<Vec<Vec<u32>>>,
    /// Galois family only: coefficients c_0..c_{d-1} of the modulus
    /// x^d + c_{d-1} x^{d-1} + ... + c_0.
    pub gf_modulus: Option<Vec<u64>>,
}

pub struct FiniteRing {
    key: String,
    family: Family,
    size: u64,
    characteristic: u64,
    cap: u64,
    modulus: Option<u64>,
    pub(crate) algebra: Option<AlgebraData>,
    add_t: Option<Vec<u16>>,
    mul_t: Option<Vec<u16>>,
    neg_t: Option<Vec<u16>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers over F_p for the Galois field construction ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` by monic `m`, both coefficient-ascending.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + (p - lead) * mc % p) % p;
            }
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic polynomials of the given degree, coefficient-ascending, iterated
/// with the constant term varying fastest.
fn monic_polys(deg: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).pow(deg as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        c.push(1);
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    for deg in 1..=d / 2 {
        for g in monic_polys(deg, p) {
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first irreducible monic degree-d polynomial over F_p in the
/// constant-term-fastest enumeration; the choice is fixed so element
/// literals are reproducible.
fn find_irreducible(d: u32, p: u64) -> Vec<u64> {
    monic_polys(d as usize, p)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists over F_p")
}

impl FiniteRing {
    /// Build the ring for a family, validating parameters and ring axioms.
    pub fn build(family: Family, cap: u64) -> Result<FiniteRing> {
        if cap == 0 {
            return Err(Error::InvalidSpec("element cap must be positive".into()));
        }
        let mut ring = match &family {
            Family::ZMod { n } => {
                let n = *n;
                if n < 2 {
                    return Err(Error::InvalidSpec(format!("zmod modulus {n} < 2")));
                }
                check_cap(n as u128, cap)?;
                FiniteRing {
                    key: family.key(),
                    family: family.clone(),
                    size: n,
                    characteristic: n,
                    cap,
                    modulus: Some(n),
                    algebra: None,
                    add_t: None,
                    mul_t: None,
                    neg_t: None,
                }
            }
            Family::GaloisField { p, d } => {
                let (p, d) = (*p, *d);
                if !is_prime(p) {
                    return Err(Error::InvalidSpec(format!("gf characteristic {p} is not prime")));
                }
                if !(1..=30).contains(&d) {
                    return Err(Error::InvalidSpec(format!("gf extension degree {d} out of range 1..=30")));
                }
                check_cap((p as u128).pow(d), cap)?;
                let modulus = find_irreducible(d, p);
                let dim = d as usize;
                // w^k reduced, for k up to 2(d-1)
                let mut powers: Vec<Vec<u64>> = Vec::new();
                let mut cur = vec![1u64];
                for _ in 0..=(2 * dim).saturating_sub(2) {
                    let mut padded = poly_rem(&cur, &modulus, p);
                    padded.resize(dim, 0);
                    powers.push(padded);
                    cur = poly_mul(&cur, &[0, 1], p);
                }
                let structure = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| sparse(&powers[i + j]))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let basis_names = (0..dim)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "w".to_string(),
                        _ => format!("w^{i}"),
                    })
                    .collect();
                let mut unity_vec = vec![0u64; dim];
                unity_vec[0] = 1;
                build_algebra(
                    family.clone(),
                    cap,
                    AlgebraData {
                        p,
                        dim,
                        basis_names,
                        structure,
                        unity_vec,
                        unity_raw: 1,
                        words: None,
                        gf_modulus: Some(modulus[..dim].to_vec()),
                    },
                )?
            }
            Family::MatrixRing { p, s } => {
                let (p, s) = (*p, *s);
                if !is_prime(p) {
                    return Err(Error::InvalidSpec(format!("matrix characteristic {p} is not prime")));
                }
                if !(1..=16).contains(&s) {
                    return Err(Error::InvalidSpec(format!("matrix size {s} out of range 1..=16")));
                }
                let dim = (s * s) as usize;
                check_cap((p as u128).pow(dim as u32), cap)?;
                let s = s as usize;
                let structure = (0..dim)
                    .map(|i| {
                        let (r1, c1) = (i / s, i % s);
                        (0..dim)
                            .map(|j| {
                                let (r2, c2) = (j / s, j % s);
                                if c1 == r2 {
                                    vec![(r1 * s + c2, 1u64)]
                                } else {
                                    vec![]
                                }
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let basis_names = (0..dim)
                    .map(|i| format!("E{}{}", i / s + 1, i % s + 1))
                    .collect();
                let mut unity_vec = vec![0u64; dim];
                let mut unity_raw: u64 = 0;
                for r in 0..s {
                    unity_vec[r * s + r] = 1;
                    unity_raw += p.pow((r * s + r) as u32);
                }
                build_algebra(
                    family.clone(),
                    cap,
                    AlgebraData {
                        p,
                        dim,
                        basis_names,
                        structure,
                        unity_vec,
                        unity_raw,
                        words: None,
                        gf_modulus: None,
                    },
                )?
            }
            Family::MonomialAlgebra { g, p } => {
                let (g, p) = (*g, *p);
                if !is_prime(p) {
                    return Err(Error::InvalidSpec(format!("monomial characteristic {p} is not prime")));
                }
                if !(1..=20).contains(&g) {
                    return Err(Error::InvalidSpec(format!("monomial generator count {g} out of range 1..=20")));
                }
                let dim = 1usize << g;
                check_cap((p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX), cap)?;
                // basis: strictly increasing words ordered by (length, lex)
                let mut words: Vec<Vec<u32>> = vec![vec![]];
                for len in 1..=g {
                    for w in (0..g).combinations(len as usize) {
                        words.push(w);
                    }
                }
                let index_of: std::collections::HashMap<Vec<u32>, usize> = words
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, w)| (w, i))
                    .collect();
                let structure = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| {
                                let (a, b) = (&words[i], &words[j]);
                                if a.is_empty() {
                                    vec![(j, 1u64)]
                                } else if b.is_empty() {
                                    vec![(i, 1u64)]
                                } else if a[a.len() - 1] < b[0] {
                                    let mut w = a.clone();
                                    w.extend_from_slice(b);
                                    vec![(index_of[&w], 1u64)]
                                } else {
                                    vec![]
                                }
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let basis_names = words
                    .iter()
                    .map(|w| {
                        if w.is_empty() {
                            "1".to_string()
                        } else {
                            w.iter().map(|k| format!("x{k}")).collect::<String>()
                        }
                    })
                    .collect();
                let mut unity_vec = vec![0u64; dim];
                unity_vec[0] = 1;
                build_algebra(
                    family.clone(),
                    cap,
                    AlgebraData {
                        p,
                        dim,
                        basis_names,
                        structure,
                        unity_vec,
                        unity_raw: 1,
                        words: Some(words),
                        gf_modulus: None,
                    },
                )?
            }
        };
        ring.verify_construction()?;
        ring.build_tables();
        Ok(ring)
    }

    fn verify_construction(&self) -> Result<()> {
        if let Some(alg) = &self.algebra {
            // unity is a two-sided identity on the basis; by bilinearity this
            // proves it on the whole algebra
            for i in 0..alg.dim {
                let mut e = vec![0u64; alg.dim];
                e[i] = 1;
                if alg_mul(alg, &alg.unity_vec, &e) != e || alg_mul(alg, &e, &alg.unity_vec) != e {
                    return Err(Error::AxiomViolation(format!(
                        "unity fails on basis element {}",
                        alg.basis_names[i]
                    )));
                }
            }
            // associativity on all basis triples proves it everywhere
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let ij = sparse_to_vec(&alg.structure[i][j], alg.dim);
                    for k in 0..alg.dim {
                        let jk = sparse_to_vec(&alg.structure[j][k], alg.dim);
                        let mut ek = vec![0u64; alg.dim];
                        ek[k] = 1;
                        let mut ei = vec![0u64; alg.dim];
                        ei[i] = 1;
                        if alg_mul(alg, &ij, &ek) != alg_mul(alg, &ei, &jk) {
                            return Err(Error::AxiomViolation(format!(
                                "associativity fails on basis triple ({}, {}, {})",
                                alg.basis_names[i], alg.basis_names[j], alg.basis_names[k]
                            )));
                        }
                    }
                }
            }
        } else if self.size <= 64 {
            self.verify_axioms_exhaustive()?;
        }
        // additive order of unity equals the declared characteristic
        let mut acc = self.zero();
        for k in 1..=self.characteristic {
            acc = self.add(acc, self.one());
            if acc == self.zero() && k < self.characteristic {
                return Err(Error::AxiomViolation(format!(
                    "unity has additive order {k}, expected {}",
                    self.characteristic
                )));
            }
        }
        if acc != self.zero() {
            return Err(Error::AxiomViolation(
                "unity does not vanish at the declared characteristic".into(),
            ));
        }
        Ok(())
    }

    fn build_tables(&mut self) {
        if self.size > TABLE_LIMIT || self.algebra.is_none() {
            return;
        }
        let n = self.size as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        for a in 0..n {
            let ea = Elem(a as u32);
            neg[a] = self.neg_raw(ea).0 as u16;
            for b in 0..n {
                let eb = Elem(b as u32);
                add[a * n + b] = self.add_raw(ea, eb).0 as u16;
                mul[a * n + b] = self.mul_raw(ea, eb).0 as u16;
            }
        }
        self.add_t = Some(add);
        self.mul_t = Some(mul);
        self.neg_t = Some(neg);
    }

    pub fn key(&self) -> &str {
        &self.key
    }
    pub fn family(&self) -> &Family {
        &self.family
    }
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
    pub fn cap(&self) -> u64 {
        self.cap
    }
    pub fn zero(&self) -> Elem {
        Elem(0)
    }
    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn is_algebra(&self) -> bool {
        self.algebra.is_some()
    }

    /// Basis dimension over F_p (algebra families only).
    pub fn dim(&self) -> Option<usize> {
        self.algebra.as_ref().map(|a| a.dim)
    }

    pub fn prime(&self) -> Option<u64> {
        self.algebra.as_ref().map(|a| a.p)
    }

    pub fn basis_name(&self, i: usize) -> Option<&str> {
        self.algebra.as_ref().map(|a| a.basis_names[i].as_str())
    }

    /// For Galois fields: the modulus of `w` as coefficients c_0..c_{d-1}
    /// of x^d + c_{d-1} x^{d-1} + ... + c_0.
    pub fn gf_modulus(&self) -> Option<&[u64]> {
        self.algebra.as_ref()?.gf_modulus.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size as u32).map(Elem)
    }

    pub fn check_elem(&self, a: Elem) -> Result<()> {
        if (a.0 as u64) < self.size {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "element index {} out of range for {}",
                a.0, self.key
            )))
        }
    }

    // index <-> coefficient vector, with a fixed transposition so that the
    // unity always sits at index 1 (only the matrix family needs the swap)
    fn fix(&self, raw: u64) -> u64 {
        let alg = self.algebra.as_ref().expect("algebra backend");
        if raw == alg.unity_raw {
            1
        } else if raw == 1 {
            alg.unity_raw
        } else {
            raw
        }
    }

    pub fn elem_to_vec(&self, a: Elem) -> Vec<u64> {
        let alg = self.algebra.as_ref().expect("algebra backend");
        let mut raw = self.fix(a.0 as u64);
        let mut v = Vec::with_capacity(alg.dim);
        for _ in 0..alg.dim {
            v.push(raw % alg.p);
            raw /= alg.p;
        }
        v
    }

    pub fn vec_to_elem(&self, v: &[u64]) -> Elem {
        let alg = self.algebra.as_ref().expect("algebra backend");
        let mut raw = 0u64;
        for i in (0..alg.dim).rev() {
            raw = raw * alg.p + v[i] % alg.p;
        }
        Elem(self.fix(raw) as u32)
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        if let Some(n) = self.modulus {
            return Elem(((a.0 as u64 + b.0 as u64) % n) as u32);
        }
        let alg = self.algebra.as_ref().unwrap();
        let (va, vb) = (self.elem_to_vec(a), self.elem_to_vec(b));
        let v: Vec<u64> = va
            .iter()
            .zip(&vb)
            .map(|(&x, &y)| (x + y) % alg.p)
            .collect();
        self.vec_to_elem(&v)
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        if let Some(n) = self.modulus {
            return Elem((a.0 as u64 * b.0 as u64 % n) as u32);
        }
        let alg = self.algebra.as_ref().unwrap();
        let (va, vb) = (self.elem_to_vec(a), self.elem_to_vec(b));
        self.vec_to_elem(&alg_mul(alg, &va, &vb))
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        if let Some(n) = self.modulus {
            return Elem(((n - a.0 as u64) % n) as u32);
        }
        let alg = self.algebra.as_ref().unwrap();
        let va = self.elem_to_vec(a);
        let v: Vec<u64> = va.iter().map(|&x| (alg.p - x) % alg.p).collect();
        self.vec_to_elem(&v)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_t {
            Some(t) => Elem(t[a.0 as usize * self.size as usize + b.0 as usize] as u32),
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_t {
            Some(t) => Elem(t[a.0 as usize * self.size as usize + b.0 as usize] as u32),
            None => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.neg_t {
            Some(t) => Elem(t[a.0 as usize] as u32),
            None => self.neg_raw(a),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// The canonical image of a natural number: n * 1_R, reduced mod the
    /// characteristic.
    pub fn nat_embed(&self, n: u64) -> Elem {
        let r = n % self.characteristic;
        if let Some(m) = self.modulus {
            return Elem((r % m) as u32);
        }
        let alg = self.algebra.as_ref().unwrap();
        let v: Vec<u64> = alg.unity_vec.iter().map(|&c| c * r % alg.p).collect();
        self.vec_to_elem(&v)
    }

    /// Exhaustive verification of every ring axiom over the full element
    /// universe. Quadratic and cubic sweeps; refuses rings larger than
    /// [`TABLE_LIMIT`].
    pub fn verify_axioms_exhaustive(&self) -> Result<()> {
        if self.size > TABLE_LIMIT {
            return Err(Error::Budget(format!(
                "exhaustive axiom sweep limited to |R| <= {TABLE_LIMIT}, got {}",
                self.size
            )));
        }
        let n = self.size as u32;
        let zero = self.zero();
        let one = self.one();
        for a in 0..n {
            let ea = Elem(a);
            if self.add(ea, zero) != ea {
                return Err(Error::AxiomViolation(format!("additive identity fails at {a}")));
            }
            if self.add(ea, self.neg(ea)) != zero {
                return Err(Error::AxiomViolation(format!("additive inverse fails at {a}")));
            }
            if self.mul(ea, one) != ea || self.mul(one, ea) != ea {
                return Err(Error::AxiomViolation(format!("unity fails at {a}")));
            }
        }
        for a in 0..n {
            let ea = Elem(a);
            for b in 0..n {
                let eb = Elem(b);
                if self.add(ea, eb) != self.add(eb, ea) {
                    return Err(Error::AxiomViolation(format!("add commutativity fails at ({a},{b})")));
                }
            }
        }
        for a in 0..n {
            let ea = Elem(a);
            for b in 0..n {
                let eb = Elem(b);
                let ab_add = self.add(ea, eb);
                let ab_mul = self.mul(ea, eb);
                for c in 0..n {
                    let ec = Elem(c);
                    if self.add(ab_add, ec) != self.add(ea, self.add(eb, ec)) {
                        return Err(Error::AxiomViolation(format!("add associativity fails at ({a},{b},{c})")));
                    }
                    if self.mul(ab_mul, ec) != self.mul(ea, self.mul(eb, ec)) {
                        return Err(Error::AxiomViolation(format!("mul associativity fails at ({a},{b},{c})")));
                    }
                    if self.mul(ea, self.add(eb, ec)) != self.add(self.mul(ea, eb), self.mul(ea, ec)) {
                        return Err(Error::AxiomViolation(format!("left distributivity fails at ({a},{b},{c})")));
                    }
                    if self.mul(ab_add, ec) != self.add(self.mul(ea, ec), self.mul(eb, ec)) {
                        return Err(Error::AxiomViolation(format!("right distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_cap(size: u128, cap: u64) -> Result<()> {
    if size > cap as u128 {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

fn build_algebra(family: Family, cap: u64, alg: AlgebraData) -> Result<FiniteRing> {
    let size = (alg.p as u128).pow(alg.dim as u32);
    check_cap(size, cap)?;
    Ok(FiniteRing {
        key: family.key(),
        family,
        size: size as u64,
        characteristic: alg.p,
        cap,
        modulus: None,
        algebra: Some(alg),
        add_t: None,
        mul_t: None,
        neg_t: None,
    })
}

fn sparse(v: &[u64]) -> Vec<(usize, u64)> {
    v.iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

fn sparse_to_vec(s: &[(usize, u64)], dim: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    for &(i, c) in s {
        v[i] = c;
    }
    v
}

pub(crate) fn alg_mul(alg: &AlgebraData, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; alg.dim];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let f = ai * bj % alg.p;
            if f == 0 {
                continue;
            }
            for &(k, c) in &alg.structure[i][j] {
                out[k] = (out[k] + f * c) % alg.p;
            }
        }
    }
    out
}

/// Matrix of left multiplication by `a`: column j holds `a * b_j`.
pub(crate) fn left_mul_matrix(ring: &FiniteRing, a: Elem) -> FpMat {
    let alg = ring.algebra.as_ref().expect("algebra backend");
    let va = ring.elem_to_vec(a);
    let mut m = FpMat::zeros(alg.p, alg.dim, alg.dim);
    for j in 0..alg.dim {
        let mut ej = vec![0u64; alg.dim];
        ej[j] = 1;
        let col = alg_mul(alg, &va, &ej);
        for (i, &c) in col.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Matrix of right multiplication by `a`: column j holds `b_j * a`.
pub(crate) fn right_mul_matrix(ring: &FiniteRing, a: Elem) -> FpMat {
    let alg = ring.algebra.as_ref().expect("algebra backend");
    let va = ring.elem_to_vec(a);
    let mut m = FpMat::zeros(alg.p, alg.dim, alg.dim);
    for j in 0..alg.dim {
        let mut ej = vec![0u64; alg.dim];
        ej[j] = 1;
        let col = alg_mul(alg, &ej, &va);
        for (i, &c) in col.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Unary/binary element arithmetic selector mirroring the engine's public
/// operation surface.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

pub fn elem_arith(ring: &FiniteRing, op: ArithOp, a: Elem, b: Option<Elem>) -> Result<Elem> {
    ring.check_elem(a)?;
    if let Some(b) = b {
        ring.check_elem(b)?;
    }
    match (op, b) {
        (ArithOp::Add, Some(b)) => Ok(ring.add(a, b)),
        (ArithOp::Mul, Some(b)) => Ok(ring.mul(a, b)),
        (ArithOp::Neg, None) => Ok(ring.neg(a)),
        (ArithOp::Neg, Some(_)) => Err(Error::Precondition("neg takes one operand".into())),
        _ => Err(Error::Precondition("binary op needs two operands".into())),
    }
}
