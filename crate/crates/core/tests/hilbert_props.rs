//! Fitting: independence of the starting submodule and numerator expansion.

use hilbert_lambda::arith::LengthValue;
use hilbert_lambda::hilbert::{generating_numerator, mu, MuOptions};
use hilbert_lambda::modrepr::{Presentation, RingSpec, SubmoduleGens};
use hilbert_lambda::oracles::{random_monomial_ideal, random_presentation, random_vector, DEFAULT_SEED};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use hilbert_lambda::slices::{growth_series, SliceOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generating sets of the whole module: the generators, the generators plus a
/// random element, and the generators together with their `x1` multiples.
fn generating_sets(rng: &mut ChaCha8Rng, m: &Presentation) -> Vec<SubmoduleGens> {
    let all = m.all_generators();
    let mut extra = all.elements.clone();
    extra.push(random_vector(rng, m.ring(), m.gens(), 2));
    let mut shifted = all.elements.clone();
    let x1 = m.ring().var(0);
    for i in 0..m.gens() {
        shifted.push(m.vector(i, x1.clone()));
    }
    vec![all, SubmoduleGens::new(extra), SubmoduleGens::new(shifted)]
}

#[test]
fn mu_does_not_depend_on_the_generating_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 5);
    let opts = MuOptions::default();
    let mut modules = 0;
    for i in 0..12 {
        let base = if i % 2 == 0 { BaseRing::PrimeField(5) } else { BaseRing::Rationals };
        let ring = RingSpec::new(base, 2);
        let m = random_presentation(&mut rng, &ring);
        let sets = generating_sets(&mut rng, &m);
        let mus: Vec<_> = sets
            .iter()
            .map(|v0| mu(&m, v0, LengthSpec::Dimension, &opts).unwrap())
            .collect();
        assert!(mus.windows(2).all(|w| w[0] == w[1]), "module {i}: {mus:?}");
        modules += 1;
    }
    assert!(modules >= 10);
}

#[test]
fn numerators_reproduce_the_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 6);
    let mut cases: Vec<Presentation> = (0..10)
        .map(|i| random_monomial_ideal(&mut rng, BaseRing::Rationals, 1 + i % 3))
        .collect();
    cases.push(Presentation::free(RingSpec::new(BaseRing::PrimeField(3), 3), 2));
    let len = 14;
    for m in cases {
        let s = growth_series(&m, &m.all_generators(), len as u64 - 1, LengthSpec::Dimension, &SliceOptions::default())
            .unwrap();
        let p = generating_numerator(&s, &m.ring().weights).unwrap();
        let expanded: Vec<LengthValue> = p
            .expand(len)
            .into_iter()
            .map(|c| LengthValue::from_lincomb(c).unwrap())
            .collect();
        assert_eq!(expanded, s.values, "{:?}: numerator {p}", m.relations());
    }
}
