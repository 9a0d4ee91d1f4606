use hilbert_lambda::arith::{lv_of_group_order, LengthValue, MuMonomial};
use hilbert_lambda::hilbert::{lambda_degree, lambda_dimension, mu, MuOptions};
use hilbert_lambda::modrepr::{from_ideal_quotient, RingSpec};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use num_bigint::BigUint;

fn lg(n: u64) -> LengthValue {
    lv_of_group_order(&BigUint::from(n))
}

#[test]
fn cyclic_quotients_of_integer_polynomials() {
    let z = BaseRing::Integers;
    let ring = RingSpec::new(z.clone(), 1);
    let m = from_ideal_quotient(ring.clone(), &[ring.constant(5)]).unwrap();
    let got = mu(&m, &m.all_generators(), LengthSpec::LogCard, &MuOptions::default()).unwrap();
    assert_eq!(got, MuMonomial::new(lg(5), 1));
    assert_eq!(lambda_dimension(&got), Ok(1));
    assert_eq!(lambda_degree(&got), lg(5));

    let p = ring.monomial(&[2], 1).add(&z, &ring.constant(1));
    let m = from_ideal_quotient(ring.clone(), &[p, ring.constant(3)]).unwrap();
    let got = mu(&m, &m.all_generators(), LengthSpec::LogCard, &MuOptions::default()).unwrap();
    assert_eq!(got, MuMonomial::new(lg(9), 0));
}

#[test]
fn hyperbola_over_the_rationals() {
    let q = BaseRing::Rationals;
    let ring = RingSpec::new(q.clone(), 2);
    let p = ring.monomial(&[1, 1], 1).sub(&q, &ring.constant(1));
    let m = from_ideal_quotient(ring, &[p]).unwrap();
    let got = mu(&m, &m.all_generators(), LengthSpec::Dimension, &MuOptions::default()).unwrap();
    assert_eq!(got, MuMonomial::new(LengthValue::from_int(2), 1));
}

#[test]
fn hat_chains() {
    use hilbert_lambda::variants::{hat_entropy_d, hat_mu_chain, HatVerdict};
    let z = BaseRing::Integers;
    let ring = RingSpec::new(z.clone(), 1);
    let opts = MuOptions::default();
    let m = from_ideal_quotient(ring.clone(), &[ring.constant(6)]).unwrap();
    let h = hat_mu_chain(&m, 8, LengthSpec::LogCard, &opts).unwrap();
    assert_eq!(h.verdict, HatVerdict::Stabilized);
    assert_eq!(h.sup, MuMonomial::new(lg(6), 1));
    let p = ring.monomial(&[2], 1).sub(&z, &ring.constant(2));
    let m = from_ideal_quotient(ring.clone(), &[p]).unwrap();
    let h = hat_mu_chain(&m, 8, LengthSpec::LogCard, &opts).unwrap();
    assert_eq!(h.verdict, HatVerdict::UnboundedEvidence);
    assert_eq!(h.sup.degree(), Some(0));
    let p = ring.monomial(&[1], 2).sub(&z, &ring.constant(1));
    let m = from_ideal_quotient(ring.clone(), &[p]).unwrap();
    let e = hat_entropy_d(&m, 1, 8, &opts).unwrap();
    assert!(e.sup.is_zero());
}

#[test]
fn intrinsic_of_integers_plus_multiple() {
    use hilbert_lambda::modrepr::{Presentation, SubmoduleGens};
    use hilbert_lambda::variants::intrinsic_mu;
    let opts = MuOptions::default();
    for k in [1usize, 2] {
        for n in [2u64, 3] {
            let m = Presentation::free(RingSpec::new(BaseRing::Integers, k), 1);
            let v0 = SubmoduleGens::integers_plus_multiple(&m, n);
            let got = intrinsic_mu(&m, &v0, LengthSpec::LogCard, &opts).unwrap();
            assert_eq!(got, MuMonomial::new(lg(n), k - 1));
        }
    }
}
