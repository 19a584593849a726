//! Property tests for the algebraic laws the engine is built on: skew
//! product laws, binomial reduction against an independent big-integer
//! oracle, annihilator monotonicity, closure idempotence, and literal
//! round-trips.

use hurwitz_core::annihilate::{annihilator, insulator_search, SearchOutcome, Side};
use hurwitz_core::hurwitz::{binom_mod, hp_add, hp_mul, HPoly};
use hurwitz_core::literal::{format_elem, format_poly, parse_elem, parse_poly};
use hurwitz_core::primetest::{close, ClosureKind};
use hurwitz_core::{
    make_ring, Elem, ElementSet, Endomorphism, EndoSelector, Family, FiniteRing, ImageQuery,
    RingSpec,
};
use num_bigint::BigUint;
use once_cell::sync::Lazy;
use proptest::prelude::*;
use std::collections::BTreeMap;

static ZMOD6: Lazy<(FiniteRing, Endomorphism)> = Lazy::new(|| {
    make_ring(&RingSpec::new(Family::ZMod { n: 6 }, EndoSelector::Identity)).unwrap()
});
static GF4: Lazy<(FiniteRing, Endomorphism)> = Lazy::new(|| {
    make_ring(&RingSpec::new(
        Family::GaloisField { p: 2, d: 2 },
        EndoSelector::Frobenius,
    ))
    .unwrap()
});
static MONO22: Lazy<(FiniteRing, Endomorphism)> = Lazy::new(|| {
    make_ring(&RingSpec::new(
        Family::MonomialAlgebra { g: 2, p: 2 },
        EndoSelector::Shift,
    ))
    .unwrap()
});

fn poly_strategy(size: u64) -> impl Strategy<Value = Vec<(u64, u32)>> {
    proptest::collection::btree_map(0u64..6, 0u32..size as u32, 0..4)
        .prop_map(|m| m.into_iter().collect())
}

fn build_poly(ring: &FiniteRing, pairs: &[(u64, u32)]) -> HPoly {
    HPoly::make(ring, pairs.iter().map(|&(d, c)| (d, Elem(c))).collect()).unwrap()
}

/// Independent binomial route: exact big-integer multiplicative formula,
/// reduced only at the end.
fn binom_big(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Untwisted Hurwitz product straight from the convolution formula, with
/// oracle binomials.
fn untwisted_oracle(ring: &FiniteRing, f: &HPoly, g: &HPoly) -> HPoly {
    let mut acc: BTreeMap<u64, Elem> = BTreeMap::new();
    for (i, fi) in f.coeffs() {
        for (j, gj) in g.coeffs() {
            let c = binom_big(i + j, i) % BigUint::from(ring.characteristic());
            let c: u64 = c.try_into().unwrap();
            let term = ring.mul(ring.mul(ring.nat_embed(c), fi), gj);
            let e = acc.entry(i + j).or_insert(ring.zero());
            *e = ring.add(*e, term);
        }
    }
    let pairs: Vec<(u64, Elem)> = acc.into_iter().filter(|&(_, e)| e.0 != 0).collect();
    HPoly::make(ring, pairs).unwrap()
}

proptest! {
    #[test]
    fn binomials_match_bigint_oracle(n in 0u64..40, k in 0u64..40, m in 2u64..50) {
        prop_assume!(k <= n);
        let expect: u64 = (binom_big(n, k) % BigUint::from(m)).try_into().unwrap();
        prop_assert_eq!(binom_mod(n, k, m).unwrap(), expect);
    }

    #[test]
    fn distributivity_over_zmod6(
        f in poly_strategy(6),
        g in poly_strategy(6),
        h in poly_strategy(6),
    ) {
        let (ring, alpha) = &*ZMOD6;
        let (f, g, h) = (build_poly(ring, &f), build_poly(ring, &g), build_poly(ring, &h));
        let gh = hp_add(ring, &g, &h).unwrap();
        let lhs = hp_mul(ring, alpha, &f, &gh).unwrap();
        let rhs = hp_add(
            ring,
            &hp_mul(ring, alpha, &f, &g).unwrap(),
            &hp_mul(ring, alpha, &f, &h).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let fg = hp_add(ring, &f, &g).unwrap();
        let lhs = hp_mul(ring, alpha, &fg, &h).unwrap();
        let rhs = hp_add(
            ring,
            &hp_mul(ring, alpha, &f, &h).unwrap(),
            &hp_mul(ring, alpha, &g, &h).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_over_skewed_rings(
        f in poly_strategy(4),
        g in poly_strategy(4),
        h in poly_strategy(4),
        which in 0..2usize,
    ) {
        let (ring, alpha) = if which == 0 { &*GF4 } else { &*MONO22 };
        let size = ring.size() as u32;
        let clip = |pairs: &[(u64, u32)]| -> Vec<(u64, u32)> {
            pairs.iter().map(|&(d, c)| (d, c % size)).collect()
        };
        let (f, g, h) = (
            build_poly(ring, &clip(&f)),
            build_poly(ring, &clip(&g)),
            build_poly(ring, &clip(&h)),
        );
        let lhs = hp_mul(ring, alpha, &hp_mul(ring, alpha, &f, &g).unwrap(), &h).unwrap();
        let rhs = hp_mul(ring, alpha, &f, &hp_mul(ring, alpha, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn untwisted_reduction_on_identity(f in poly_strategy(6), g in poly_strategy(6)) {
        let (ring, alpha) = &*ZMOD6;
        let (f, g) = (build_poly(ring, &f), build_poly(ring, &g));
        let skew = hp_mul(ring, alpha, &f, &g).unwrap();
        prop_assert_eq!(skew, untwisted_oracle(ring, &f, &g));
    }

    #[test]
    fn degree_law_and_top_coefficient(f in poly_strategy(4), g in poly_strategy(4)) {
        let (ring, alpha) = &*GF4;
        let clip = |pairs: &[(u64, u32)]| -> Vec<(u64, u32)> {
            pairs.iter().map(|&(d, c)| (d, c % 4)).collect()
        };
        let (f, g) = (build_poly(ring, &clip(&f)), build_poly(ring, &clip(&g)));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let prod = hp_mul(ring, alpha, &f, &g).unwrap();
        let (df, dg) = (f.delta().unwrap(), g.delta().unwrap());
        if let Some(dp) = prod.delta() {
            prop_assert!(dp <= df + dg);
        }
        // exact top coefficient: C(df+dg, df) f(df) alpha^df(g(dg))
        let expect = ring.mul(
            ring.mul(
                hurwitz_core::binom_reduced(ring, df + dg, df).unwrap(),
                f.coeff(df, ring),
            ),
            alpha.apply_pow(g.coeff(dg, ring), df),
        );
        prop_assert_eq!(prod.coeff(df + dg, ring), expect);
    }

    #[test]
    fn constant_embedding_is_a_ring_homomorphism(r in 0u32..6, s in 0u32..6) {
        let (ring, alpha) = &*ZMOD6;
        let hr = HPoly::constant(ring, Elem(r)).unwrap();
        let hs = HPoly::constant(ring, Elem(s)).unwrap();
        let sum = hp_add(ring, &hr, &hs).unwrap();
        prop_assert_eq!(sum, HPoly::constant(ring, ring.add(Elem(r), Elem(s))).unwrap());
        let prod = hp_mul(ring, alpha, &hr, &hs).unwrap();
        prop_assert_eq!(prod, HPoly::constant(ring, ring.mul(Elem(r), Elem(s))).unwrap());
    }

    #[test]
    fn skew_commutation_of_basis_and_constants(i in 0u64..5, r in 0u32..4) {
        let (ring, alpha) = &*GF4;
        let h = HPoly::h(ring, i + 1).unwrap();
        let hr = HPoly::constant(ring, Elem(r)).unwrap();
        let left = hp_mul(ring, alpha, &h, &hr).unwrap();
        let expect_left = HPoly::make(ring, vec![(i, alpha.apply_pow(Elem(r), i))]).unwrap();
        prop_assert_eq!(left, expect_left);
        let right = hp_mul(ring, alpha, &hr, &h).unwrap();
        let expect_right = HPoly::make(ring, vec![(i, Elem(r))]).unwrap();
        prop_assert_eq!(right, expect_right);
    }

    #[test]
    fn annihilators_antitone_under_inclusion(
        small in proptest::collection::btree_set(0u32..16, 1..3),
        extra in proptest::collection::btree_set(0u32..16, 0..3),
    ) {
        let (ring, _) = &*MONO22;
        let small_members: Vec<Elem> = small.iter().map(|&i| Elem(i)).collect();
        let mut big_members = small_members.clone();
        big_members.extend(extra.iter().map(|&i| Elem(i)));
        let fs = ElementSet::from_members(ring, small_members).unwrap();
        let fb = ElementSet::from_members(ring, big_members).unwrap();
        for side in [Side::Left, Side::Right] {
            let a_small = annihilator(ring, &fs, side).unwrap();
            let a_big = annihilator(ring, &fb, side).unwrap();
            prop_assert!(a_big.is_subset_of(&a_small));
        }
    }

    #[test]
    fn annihilators_are_one_sided_ideals(
        gens in proptest::collection::btree_set(1u32..16, 1..3),
    ) {
        let (ring, _) = &*MONO22;
        let members: Vec<Elem> = gens.iter().map(|&i| Elem(i)).collect();
        let f = ElementSet::from_members(ring, members).unwrap();
        let l = annihilator(ring, &f, Side::Left).unwrap();
        let r = annihilator(ring, &f, Side::Right).unwrap();
        for &x in l.members() {
            for &y in l.members() {
                prop_assert!(l.contains(ring.add(x, y)));
            }
            for s in ring.elements() {
                prop_assert!(l.contains(ring.mul(s, x)));
            }
        }
        for &x in r.members() {
            for &y in r.members() {
                prop_assert!(r.contains(ring.add(x, y)));
            }
            for s in ring.elements() {
                prop_assert!(r.contains(ring.mul(x, s)));
            }
        }
    }

    #[test]
    fn annihilator_ignores_span_closure(
        gens in proptest::collection::btree_set(1u32..16, 1..3),
    ) {
        let (ring, _) = &*MONO22;
        let members: Vec<Elem> = gens.iter().map(|&i| Elem(i)).collect();
        let f = ElementSet::from_members(ring, members.clone()).unwrap();
        let span = ElementSet::additive_closure(ring, &members).unwrap();
        for side in [Side::Left, Side::Right] {
            let from_set = annihilator(ring, &f, side).unwrap();
            let from_span = annihilator(ring, &span, side).unwrap();
            prop_assert_eq!(from_set.members(), from_span.members());
        }
    }

    #[test]
    fn search_existence_matches_direct_annihilator(gen in 1u32..16) {
        let (ring, _) = &*MONO22;
        let ideal = close(ring, None, &[Elem(gen)], ClosureKind::LeftIdeal).unwrap().set;
        let direct = annihilator(ring, &ideal, Side::Left).unwrap().is_zero_only();
        let found = matches!(
            insulator_search(ring, &ideal, Side::Left, 2).unwrap(),
            SearchOutcome::Found(_)
        );
        prop_assert_eq!(direct, found);
    }

    #[test]
    fn closure_idempotence(gens in proptest::collection::btree_set(0u32..16, 1..3)) {
        let (ring, alpha) = &*MONO22;
        let members: Vec<Elem> = gens.iter().map(|&i| Elem(i)).collect();
        for kind in [
            ClosureKind::LeftIdeal,
            ClosureKind::TwoSidedIdeal,
            ClosureKind::LeftAlphaIdeal,
        ] {
            let once = close(ring, Some(alpha), &members, kind).unwrap();
            let twice = close(ring, Some(alpha), once.set.members(), kind).unwrap();
            prop_assert_eq!(once.set.members(), twice.set.members());
            for &g in &members {
                prop_assert!(once.set.contains(g));
            }
        }
    }

    #[test]
    fn meet_image_nonincreasing(gen in 1u32..16, upto in 0u64..5) {
        let (ring, alpha) = &*MONO22;
        let f = ElementSet::from_members(ring, vec![Elem(gen)]).unwrap();
        let (at_n, _) =
            hurwitz_core::annihilate::ann_meet_image(ring, alpha, &f, ImageQuery::Power(upto))
                .unwrap();
        let (next, _) =
            hurwitz_core::annihilate::ann_meet_image(ring, alpha, &f, ImageQuery::Power(upto + 1))
                .unwrap();
        prop_assert!(next.is_subset_of(&at_n));
    }

    #[test]
    fn nat_embed_periodic(n in 0u64..1000) {
        for (ring, _) in [&*ZMOD6, &*GF4, &*MONO22] {
            prop_assert_eq!(ring.nat_embed(n), ring.nat_embed(n % ring.characteristic()));
        }
    }

    #[test]
    fn element_literals_roundtrip(idx in 0u32..256) {
        for (ring, _) in [&*ZMOD6, &*GF4, &*MONO22] {
            let e = Elem(idx % ring.size() as u32);
            let s = format_elem(ring, e);
            prop_assert_eq!(parse_elem(ring, &s).unwrap(), e);
        }
    }

    #[test]
    fn poly_literals_roundtrip(pairs in poly_strategy(4)) {
        for (ring, _) in [&*GF4, &*MONO22] {
            let clipped: Vec<(u64, Elem)> = pairs
                .iter()
                .map(|&(d, c)| (d, Elem(c % ring.size() as u32)))
                .collect();
            let f = HPoly::make(ring, clipped).unwrap();
            let s = format_poly(ring, &f);
            prop_assert_eq!(parse_poly(ring, &s).unwrap(), f);
        }
    }

    #[test]
    fn image_chain_descends(k in 0usize..6) {
        let (ring, alpha) = &*MONO22;
        let chain = alpha.image_chain();
        let i = k.min(chain.len() - 1);
        if i > 0 {
            prop_assert!(chain[i].is_subset_of(&chain[i - 1]));
        }
        prop_assert!(alpha.stabilization_index() <= ring.size() as usize);
    }
}
