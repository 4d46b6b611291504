//! Property definitions shared by the property suite and the acceptance harness.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use superchar::oracle::{Oracle, SpaceKind};
use superchar::reps::{canonical_form, LabelKind, RepStyle};
use superchar::{CycNumber, Field, FieldScalar, Matrix, PatternPoset};

pub const FIELDS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];
/// `(q, n, m)` groups small enough for exhaustive orbits.
pub const GROUPS: [(u32, usize, usize); 9] =
    [(2, 3, 0), (2, 4, 0), (2, 4, 2), (2, 4, 4), (3, 3, 1), (3, 4, 0), (3, 4, 2), (4, 3, 0), (2, 5, 3)];

pub fn field(q: u32) -> Field {
    Field::parse(&q.to_string()).unwrap()
}

pub fn scalar(f: &Field, seed: u32) -> FieldScalar {
    f.element(seed % f.q()).unwrap()
}

/// A matrix supported on the poset's positions with entries drawn from `seeds`.
pub fn matrix_on(f: &Field, poset: &PatternPoset, seeds: &[u32]) -> Matrix {
    let mut a = Matrix::zeros(poset.n());
    for (&(i, j), &s) in poset.positions().iter().zip(seeds.iter().cycle()) {
        a.set(i, j, scalar(f, s));
    }
    a
}

pub fn cyc(p: u32, coeffs: &[i64]) -> CycNumber {
    let c = (0..(p - 1) as usize).map(|i| BigRational::from_integer(BigInt::from(coeffs[i % coeffs.len()]))).collect();
    CycNumber::from_coeffs(p, c)
}

pub fn group(idx: usize) -> (Field, PatternPoset) {
    let (q, n, m) = GROUPS[idx];
    (field(q), PatternPoset::interpolating(n, m).unwrap())
}

pub fn styles(poset: &PatternPoset) -> Vec<RepStyle> {
    let mut out = vec![RepStyle::Comb, RepStyle::Path];
    if poset.is_chain() {
        out.push(RepStyle::UnCanonical);
    }
    out
}

/// A seeded runner, so failures reproduce.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

pub fn canonical_form_is_constant_on_orbits(cases: u32) -> Result<(), String> {
    let strategy =
        (0..GROUPS.len(), prop::collection::vec(any::<u32>(), 10), any::<prop::sample::Index>(), any::<bool>());
    runner(cases)
        .run(&strategy, |(gi, seeds, pick, character)| {
            let (f, poset) = group(gi);
            let a = matrix_on(&f, &poset, &seeds);
            let oracle = Oracle::new(&f, &poset);
            let (kind, orbit) = if character {
                (LabelKind::Character, oracle.dual_orbit(&a).unwrap())
            } else {
                (LabelKind::Class, oracle.class_orbit(&a).unwrap())
            };
            let b = pick.get(&orbit);
            for style in styles(&poset) {
                let ca = canonical_form(&f, &a, &poset, style, kind).unwrap();
                prop_assert_eq!(&ca, &canonical_form(&f, b, &poset, style, kind).unwrap());
                prop_assert!(orbit.contains(&ca));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn orbit_partition_ignores_generator_order(cases: u32) -> Result<(), String> {
    let strategy = (0..GROUPS.len(), any::<bool>(), any::<u64>());
    runner(cases)
        .run(&strategy, |(gi, character, shuffle_seed)| {
            let (f, poset) = group(gi);
            let oracle = Oracle::new(&f, &poset);
            let kind = if character { SpaceKind::Character } else { SpaceKind::Class };
            let mut order: Vec<usize> = (0..oracle.move_count(kind)).collect();
            // Fisher-Yates driven by an LCG so the permutation depends only on the seed.
            let mut s = shuffle_seed;
            for i in (1..order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let base = oracle.orbit_table(kind).unwrap();
            let shuffled = oracle.orbit_table_with_order(kind, Some(&order)).unwrap();
            prop_assert_eq!(base.orbits, shuffled.orbits);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn theta_sums_vanish(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(0..FIELDS.len(), any::<u32>()), |(qi, a)| {
            let f = field(FIELDS[qi]);
            let a = scalar(&f, a);
            let total = f.elements().fold(CycNumber::zero(f.p()), |acc, x| acc.add(&f.theta(f.mul(a, x))));
            let expected = if a.is_zero() { CycNumber::from_int(f.p(), f.q() as i64) } else { CycNumber::zero(f.p()) };
            prop_assert_eq!(total, expected);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn cyclotomic_ring_axioms(cases: u32) -> Result<(), String> {
    let coeffs = || prop::collection::vec(-5i64..5, 6);
    let strategy = (0..4usize, coeffs(), coeffs(), coeffs(), 1u32..7);
    runner(cases)
        .run(&strategy, |(pi, x, y, z, k)| {
            let p = [2u32, 3, 5, 7][pi];
            let (a, b, c) = (cyc(p, &x), cyc(p, &y), cyc(p, &z));
            let zero = CycNumber::zero(p);
            let one = CycNumber::one(p);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&zero), a.clone());
            prop_assert_eq!(a.mul(&one), a.clone());
            prop_assert_eq!(a.sub(&a), zero);
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!(a.mul(&b).is_algebraic_integer());
            if k % p != 0 {
                prop_assert_eq!(a.mul(&b).galois(k), a.galois(k).mul(&b.galois(k)));
                prop_assert_eq!(a.add(&b).galois(k), a.galois(k).add(&b.galois(k)));
            }
            prop_assert_eq!(CycNumber::zeta_pow(p, k as u64).pow(p), one);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
