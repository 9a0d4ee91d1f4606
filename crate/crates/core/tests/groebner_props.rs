//! Normal forms over the integers: additivity and membership against a
//! bounded-degree lattice search.

use hilbert_lambda::arith::Rational;
use hilbert_lambda::groebner::{add_scaled, buchberger_strong, to_mvec, MVec, StrongGB, DEFAULT_GB_BUDGET};
use hilbert_lambda::linalg::Echelon;
use hilbert_lambda::modrepr::RingSpec;
use hilbert_lambda::oracles::random_poly;
use hilbert_lambda::poly::{FreeVec, Monomial, Poly, TermOrder};
use hilbert_lambda::ring::{BaseRing, IntRing, RatField};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mvec(p: &Poly<Rational>, k: usize) -> MVec<BigInt> {
    to_mvec(&IntRing, &FreeVec::new(vec![p.clone()]), &vec![1; k]).unwrap()
}

fn sum(a: &MVec<BigInt>, b: &MVec<BigInt>, k: usize) -> MVec<BigInt> {
    add_scaled(&IntRing, a, &BigInt::one(), &Monomial::one(k), b, &vec![1; k])
}

fn basis(gens: &[Poly<Rational>], k: usize) -> StrongGB<IntRing> {
    let rels: Vec<_> = gens.iter().map(|g| mvec(g, k)).collect();
    buchberger_strong(&IntRing, &TermOrder::standard(k), k, 1, &rels, DEFAULT_GB_BUDGET).unwrap()
}

fn random_gens(rng: &mut ChaCha8Rng, k: usize, count: usize, deg: u64) -> Vec<Poly<Rational>> {
    let ring = RingSpec::new(BaseRing::Integers, k);
    (0..count).map(|_| random_poly(rng, &ring, deg, 3)).filter(|p| !p.is_zero()).collect()
}

/// Coefficient vector of a univariate polynomial, indexed by exponent.
fn coeff_row(p: &Poly<Rational>) -> Vec<(usize, BigInt)> {
    let mut row: Vec<(usize, BigInt)> = p
        .terms()
        .map(|(m, c)| (m.exps()[0] as usize, c.to_integer()))
        .collect();
    row.sort();
    row
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_additive(seed in any::<u64>(), k in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_gens(&mut rng, k, 1 + (seed % 3) as usize, 2);
        prop_assume!(!gens.is_empty());
        let gb = basis(&gens, k);
        let ring = RingSpec::new(BaseRing::Integers, k);
        let f = mvec(&random_poly(&mut rng, &ring, 3, 4), k);
        let g = mvec(&random_poly(&mut rng, &ring, 3, 4), k);
        let lhs = gb.normal_form(&sum(&f, &g, k));
        let rhs = gb.normal_form(&sum(&gb.normal_form(&f), &gb.normal_form(&g), k));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(gb.normal_form(&lhs), lhs);
        for r in &gens {
            prop_assert!(gb.contains(&mvec(r, k)));
        }
    }

    #[test]
    fn membership_matches_lattice_search(seed in any::<u64>()) {
        // Z[x]: f ∈ I exactly when f is a Z-combination of x^j g_i, j <= D
        const D: u32 = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_gens(&mut rng, 1, 1 + (seed % 2) as usize, 2);
        prop_assume!(!gens.is_empty());
        let gb = basis(&gens, 1);
        let top = D as usize + 3;
        let mut span = Echelon::new(IntRing, top);
        for g in &gens {
            for j in 0..=D {
                let shifted = g.mul_monomial(&RatField, &Monomial(vec![j]), &Rational::one());
                span.insert(coeff_row(&shifted));
            }
        }
        let ring = RingSpec::new(BaseRing::Integers, 1);
        let mut members = 0;
        for i in 0..8 {
            let mut f = random_poly(&mut rng, &ring, 3, 4);
            if i % 2 == 0 {
                // a combination of the generators, sometimes nudged by a constant
                f = Poly::zero(1);
                for g in &gens {
                    f = f.add(&RatField, &random_poly(&mut rng, &ring, 1, 2).mul(&RatField, g));
                }
                if i % 4 == 2 {
                    f = f.add(&RatField, &Poly::constant(&RatField, 1, Rational::one()));
                }
            }
            let in_span = span.contains(coeff_row(&f));
            let in_ideal = gb.contains(&mvec(&f, 1));
            prop_assert_eq!(in_span, in_ideal, "f = {} in ({:?})", f, gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
            members += usize::from(in_ideal);
        }
        prop_assert!(members >= 1);
    }
}
