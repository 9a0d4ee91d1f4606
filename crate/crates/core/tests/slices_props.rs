//! Invariants of computed series: path agreement, monotonicity, the step /
//! difference identity and the Samuel bound.

use hilbert_lambda::arith::{lv_add, lv_compare, LvOrdering};
use hilbert_lambda::oracles::{additivity_cases, random_monomial_ideal, DEFAULT_SEED};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use hilbert_lambda::slices::{growth_series, intrinsic_series, samuel_series, SliceOptions, SlicePath};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BITS: u32 = 128;

fn with_path(path: SlicePath) -> SliceOptions {
    SliceOptions {
        path,
        ..SliceOptions::default()
    }
}

#[test]
fn groebner_and_homogeneous_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..24 {
        let k = 1 + i % 3;
        let base = if i % 2 == 0 { BaseRing::Rationals } else { BaseRing::PrimeField(7) };
        let m = random_monomial_ideal(&mut rng, base, k);
        let v0 = m.all_generators();
        let a = growth_series(&m, &v0, 8, LengthSpec::Dimension, &with_path(SlicePath::Groebner)).unwrap();
        let b = growth_series(&m, &v0, 8, LengthSpec::Dimension, &with_path(SlicePath::Homogeneous)).unwrap();
        assert_eq!(a.values, b.values, "case {i}: {:?}", m.relations());
        assert_eq!(a.path, SlicePath::Groebner);
        assert_eq!(b.path, SlicePath::Homogeneous);
    }
}

#[test]
fn random_series_invariants() {
    let opts = SliceOptions::default();
    for (i, (m, v0, spec)) in additivity_cases(DEFAULT_SEED + 3, 20, 20).into_iter().enumerate() {
        let g = growth_series(&m, &v0, 6, spec, &opts).unwrap();
        // nondecreasing, and ∞ absorbs
        for w in g.values.windows(2) {
            assert_ne!(lv_compare(&w[0], &w[1], BITS), LvOrdering::Greater, "case {i}: {:?}", g.values);
            if w[0].is_infinite() {
                assert!(w[1].is_infinite(), "case {i}");
            }
        }
        if !g.values[0].is_infinite() {
            let steps = intrinsic_series(&m, &v0, 5, spec, &opts).unwrap();
            for n in 0..=5 {
                assert_eq!(lv_add(&g.values[n], &steps.values[n]), g.values[n + 1], "case {i}, n = {n}");
            }
        }
        let all = m.all_generators();
        let a = growth_series(&m, &all, 6, spec, &opts).unwrap();
        let c = samuel_series(&m, 6, spec).unwrap();
        for n in 0..=6 {
            assert_ne!(
                lv_compare(&c.values[n], &a.values[n], BITS),
                LvOrdering::Greater,
                "case {i}, n = {n}: samuel {} > growth {}",
                c.values[n],
                a.values[n]
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paths_agree_on_monomial_ideals(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monomial_ideal(&mut rng, BaseRing::Rationals, k);
        let v0 = m.all_generators();
        let a = growth_series(&m, &v0, 8, LengthSpec::Dimension, &with_path(SlicePath::Groebner)).unwrap();
        let b = growth_series(&m, &v0, 8, LengthSpec::Dimension, &with_path(SlicePath::Homogeneous)).unwrap();
        prop_assert_eq!(a.values, b.values);
    }
}
