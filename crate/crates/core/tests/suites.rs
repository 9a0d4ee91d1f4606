use hilbert_lambda::oracles::{additivity_suite, entropy_additivity_suite, oracle_equivalence_suite, DEFAULT_SEED};

#[test]
fn additivity_holds_on_random_modules() {
    let r = additivity_suite(DEFAULT_SEED, 50, 20, 8);
    assert!(r.ok(), "{:#?}", r.failures);
    assert_eq!(r.cases, 70);
}

#[test]
fn entropies_add_on_random_modules() {
    let r = entropy_additivity_suite(DEFAULT_SEED + 1, 10, 10);
    assert!(r.ok(), "{:#?}", r.failures);
}

#[test]
fn oracles_agree() {
    let r = oracle_equivalence_suite(DEFAULT_SEED, 100);
    assert!(r.ok(), "{:#?}", r.failures);
    assert!(r.passed >= 100);
}
