//! Criterion benchmarks for the hot paths: the skew product, the two
//! annihilator backends, the alpha-primeness decider, and the full
//! one-sided example harness.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hurwitz_core::annihilate::{annihilator_enum, annihilator_nullspace, Side};
use hurwitz_core::hurwitz::hp_mul;
use hurwitz_core::primetest::{alpha_strongly_prime, example_verify, OrbitRange};
use hurwitz_core::{
    make_ring, Elem, ElementSet, EndoSelector, Family, HPoly, RingSpec, DEFAULT_ELEMENT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bench_hp_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("hp_mul");
    for (label, family, endo) in [
        ("gf4_frobenius", Family::GaloisField { p: 2, d: 2 }, EndoSelector::Frobenius),
        (
            "monomial32_shift",
            Family::MonomialAlgebra { g: 3, p: 2 },
            EndoSelector::Shift,
        ),
    ] {
        let (ring, alpha) = make_ring(&RingSpec::new(family, endo)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let polys: Vec<HPoly> = (0..64)
            .map(|_| {
                let mut pairs: Vec<(u64, Elem)> = Vec::new();
                for d in 0..8u64 {
                    if rng.gen_bool(0.5) {
                        pairs.push((d, Elem(rng.gen_range(0..ring.size() as u32))));
                    }
                }
                HPoly::make(&ring, pairs).unwrap()
            })
            .collect();
        group.bench_function(label, |b| {
            let mut i = 0usize;
            b.iter(|| {
                let f = &polys[i % polys.len()];
                let g = &polys[(i * 7 + 3) % polys.len()];
                i += 1;
                hp_mul(&ring, &alpha, f, g).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_annihilators(c: &mut Criterion) {
    let (ring, _) = make_ring(&RingSpec::new(
        Family::MonomialAlgebra { g: 3, p: 2 },
        EndoSelector::Shift,
    ))
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sets: Vec<ElementSet> = (0..32)
        .map(|_| {
            let members: Vec<Elem> = (0..3)
                .map(|_| Elem(rng.gen_range(1..ring.size() as u32)))
                .collect();
            ElementSet::from_members(&ring, members).unwrap()
        })
        .collect();
    let mut group = c.benchmark_group("left_annihilator_monomial32");
    group.bench_function("enumeration", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let f = &sets[i % sets.len()];
            i += 1;
            annihilator_enum(&ring, f, Side::Left).unwrap()
        })
    });
    group.bench_function("nullspace", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let f = &sets[i % sets.len()];
            i += 1;
            annihilator_nullspace(&ring, f, Side::Left).unwrap()
        })
    });
    group.finish();
}

fn bench_deciders(c: &mut Criterion) {
    let mut group = c.benchmark_group("deciders");
    group.sample_size(10);
    let (small, small_shift) = make_ring(&RingSpec::new(
        Family::MonomialAlgebra { g: 2, p: 2 },
        EndoSelector::Shift,
    ))
    .unwrap();
    group.bench_function("alpha_prime_monomial22", |b| {
        b.iter_batched(
            || (),
            |_| alpha_strongly_prime(&small, &small_shift, OrbitRange::Full).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("example_verify_g3", |b| {
        b.iter_batched(
            || (),
            |_| example_verify(3, 2, DEFAULT_ELEMENT_CAP).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_hp_mul, bench_annihilators, bench_deciders);
criterion_main!(benches);
