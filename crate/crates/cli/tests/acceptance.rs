//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hilbert_lambda::arith::{binomial, factorial, lv_of_group_order, LengthValue, LinComb, MuMonomial, Rational};
use hilbert_lambda::hilbert::{
    fit_multivariate, generating_numerator, lambda_degree, lambda_dimension, mu, mu_fit, MuOptions,
};
use hilbert_lambda::modrepr::{
    from_ideal_quotient, laurent_presentation, polynomial_ring_over_itself, two_generator_algebra_example,
    Presentation, RingSpec, SubmoduleGens,
};
use hilbert_lambda::oracles::{
    additivity_cases, additivity_suite, oracle_equivalence_suite, random_monomial_ideal, weighted_growth_oracle,
    DEFAULT_SEED,
};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use hilbert_lambda::slices::{growth_series, multibox_series, SliceOptions};
use hilbert_lambda::variants::{
    hat_entropy_d, intrinsic_entropy_i, intrinsic_fit, intrinsic_mu, module_length, samuel_mu_bar, HatVerdict,
};
use hilbert_lambda::Error;
use hlambda_cli::parse::parse_poly;
use hlambda_cli::table::paper_table;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn opts() -> MuOptions {
    MuOptions::default()
}

fn lg(n: u64) -> LengthValue {
    lv_of_group_order(&BigUint::from(n))
}

fn int_lv(n: u64) -> LengthValue {
    LengthValue::from_int(n)
}

fn quotient(base: BaseRing, k: usize, gens: &[&str]) -> Presentation {
    let ring = RingSpec::new(base, k);
    let polys: Vec<_> = gens.iter().map(|s| parse_poly(s, k).expect("well-formed")).collect();
    from_ideal_quotient(ring, &polys).expect("valid quotient")
}

fn table_reproduction() -> Outcome {
    let rows = paper_table(&opts(), 8).map_err(|e| e.to_string())?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.ok)
        .map(|r| format!("{} {}: expected {}, got {}", r.ideal, r.column, r.expected, r.computed))
        .collect();
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    ensure!(rows.len() == 33, "expected 33 cells, got {}", rows.len());
    Ok(format!("{} cells", rows.len()))
}

fn free_module_formula() -> Outcome {
    let mut checked = 0;
    let bases = [
        (BaseRing::Rationals, LengthSpec::Dimension, int_lv(1)),
        (BaseRing::PrimeField(3), LengthSpec::Dimension, int_lv(1)),
        (BaseRing::zmod(4), LengthSpec::LogCard, lg(4)),
    ];
    for (base, spec, lambda_r) in bases {
        for k in 3..=4usize {
            for d in 0..=3usize {
                let vars: Vec<String> = (d + 1..=k).map(|i| format!("x{i}")).collect();
                let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
                let m = quotient(base.clone(), k, &refs);
                let v0 = m.all_generators();
                let s = growth_series(&m, &v0, 15, spec, &SliceOptions::default()).map_err(e2s)?;
                for (n, v) in s.values.iter().enumerate() {
                    let c = Rational::from_integer(binomial(n as u64 + d as u64, d as u64));
                    ensure!(*v == lambda_r.scale(&c), "{base} k={k} d={d} n={n}: {v}");
                }
                let got = mu(&m, &v0, spec, &opts()).map_err(e2s)?;
                let want = MuMonomial::new(lambda_r.scale(&factorial(d).recip()), d);
                ensure!(got == want, "{base} k={k} d={d}: mu = {got}, want {want}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} modules, n <= 15"))
}

fn degree_of_hypersurfaces() -> Outcome {
    for k in [2usize, 3] {
        for (p, e) in [("x1^2 + x2^2 + 1", 2u64), ("x1^3 + x2", 3)] {
            let m = quotient(BaseRing::PrimeField(3), k, &[p]);
            let got = mu(&m, &m.all_generators(), LengthSpec::Dimension, &opts()).map_err(e2s)?;
            let dim = lambda_dimension(&got).map_err(e2s)?;
            ensure!(dim == k - 1, "k={k} p={p}: dimension {dim}");
            ensure!(lambda_degree(&got) == int_lv(e), "k={k} p={p}: degree {}", lambda_degree(&got));
        }
    }
    Ok("4 hypersurfaces".into())
}

fn samuel_comparison() -> Outcome {
    let m = quotient(BaseRing::Rationals, 2, &["x*y - 1"]);
    let got = mu(&m, &m.all_generators(), LengthSpec::Dimension, &opts()).map_err(e2s)?;
    ensure!(got == MuMonomial::new(int_lv(2), 1), "mu(xy - 1) = {got}");
    let bar = samuel_mu_bar(&m, LengthSpec::Dimension, &opts()).map_err(e2s)?;
    ensure!(bar.is_zero(), "mu_bar(xy - 1) = {bar}");
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut n = 0;
    for i in 0..24 {
        let k = 1 + i % 3;
        let m = random_monomial_ideal(&mut rng, BaseRing::Rationals, k);
        let a = mu(&m, &m.all_generators(), LengthSpec::Dimension, &opts()).map_err(e2s)?;
        let b = samuel_mu_bar(&m, LengthSpec::Dimension, &opts()).map_err(e2s)?;
        ensure!(a == b, "monomial ideal {:?}: mu = {a}, mu_bar = {b}", m.relations());
        n += 1;
    }
    Ok(format!("xy - 1 plus {n} monomial ideals"))
}

fn additivity() -> Outcome {
    let r = additivity_suite(DEFAULT_SEED, 50, 20, 8);
    ensure!(r.cases >= 70, "only {} cases", r.cases);
    ensure!(r.ok(), "{} failures: {:?}", r.failures.len(), r.failures);
    Ok(format!("{}/{} cases", r.passed, r.cases))
}

fn intrinsic() -> Outcome {
    for k in [1usize, 2] {
        for n in [2u64, 3] {
            let m = Presentation::free(RingSpec::new(BaseRing::Integers, k), 1);
            let v0 = SubmoduleGens::integers_plus_multiple(&m, n);
            let got = intrinsic_mu(&m, &v0, LengthSpec::LogCard, &opts()).map_err(e2s)?;
            let want = MuMonomial::new(lg(n).scale(&factorial(k - 1).recip()), k - 1);
            ensure!(got == want, "k={k} n={n}: {got}, want {want}");
        }
    }
    let m = quotient(BaseRing::Integers, 1, &["2*x - 1"]);
    let mt = intrinsic_mu(&m, &m.all_generators(), LengthSpec::LogCard, &opts()).map_err(e2s)?;
    let la = module_length(&m, LengthSpec::LogCard, &opts()).map_err(e2s)?;
    let h = intrinsic_entropy_i(&mt, 1, &la);
    ensure!(h == lg(2), "intrinsic entropy of Z[x]/(2x - 1) = {h}");
    let hat = hat_entropy_d(&m, 1, 8, &opts()).map_err(e2s)?;
    ensure!(
        hat.sup.is_zero() && hat.verdict == HatVerdict::Stabilized,
        "hat-chain entropy {} [{:?}]",
        hat.sup,
        hat.verdict
    );
    // q~ = Δq on cases with finite starting length
    let mut checked = 0;
    let mut nonconstant = 0;
    for (b, a0, spec) in additivity_cases(DEFAULT_SEED + 11, 30, 30) {
        if checked == 10 {
            break;
        }
        let fit = match mu_fit(&b, &a0, spec, &opts()) {
            Ok(f) => f,
            Err(Error::NotLambdaFinite) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let step = intrinsic_fit(&b, &a0, spec, &opts()).map_err(e2s)?;
        let delta = fit.polynomial.forward_difference();
        ensure!(
            delta == step.polynomial.coeffs,
            "case {checked}: Δq = {delta:?}, q~ = {:?}",
            step.polynomial.coeffs
        );
        nonconstant += usize::from(!delta.is_empty());
        checked += 1;
    }
    ensure!(checked == 10, "only {checked} finite cases found");
    Ok(format!(
        "4 intrinsic monomials, 2x - 1, 10 difference checks ({nonconstant} with nonzero Δq)"
    ))
}

fn numerators() -> Outcome {
    let m = Presentation::free(RingSpec::new(BaseRing::Rationals, 2), 1);
    let s = growth_series(&m, &m.all_generators(), 12, LengthSpec::Dimension, &SliceOptions::default())
        .map_err(e2s)?;
    let p = generating_numerator(&s, &[1, 1]).map_err(e2s)?;
    ensure!(p.coeffs == vec![LinComb::from_int(1)], "numerator {p}");
    ensure!(p.denominator == vec![1, 1, 1], "denominator {:?}", p.denominator);
    let ring = RingSpec::weighted(BaseRing::Integers, vec![2]).map_err(e2s)?;
    let w = Presentation::free(ring, 1);
    let s = growth_series(&w, &w.all_generators(), 20, LengthSpec::Rank, &SliceOptions::default()).map_err(e2s)?;
    let oracle = weighted_growth_oracle(&[2], 20);
    for (n, (v, o)) in s.values.iter().zip(&oracle).enumerate() {
        let o = u64::try_from(o).expect("small counts");
        ensure!(*v == int_lv(o), "weighted n={n}: {v} vs oracle {o}");
    }
    ensure!(s.values.len() == 21, "{} values", s.values.len());
    let p = generating_numerator(&s, &[2]).map_err(e2s)?;
    ensure!(p.coeffs == vec![LinComb::from_int(1)], "weighted numerator {p}");
    Ok("free k=2 and weighted (2), n <= 20".into())
}

fn multigraded() -> Outcome {
    let m = Presentation::free(RingSpec::new(BaseRing::Rationals, 2), 1);
    let blocks = vec![vec![0], vec![1]];
    let mut leaders = Vec::new();
    for max_box in [[5u64, 5], [4, 7]] {
        let s = multibox_series(
            &m,
            &m.all_generators(),
            &blocks,
            &max_box,
            LengthSpec::Dimension,
            &SliceOptions::default(),
        )
        .map_err(e2s)?;
        let q = fit_multivariate(&s.boxes, &[1, 1], 2).map_err(e2s)?;
        let one = LinComb::from_int(1);
        for e in [[0u32, 0], [1, 0], [0, 1], [1, 1]] {
            ensure!(q.coeff(&e) == one, "box {max_box:?}: coefficient of {e:?} is {}", q.coeff(&e));
        }
        ensure!(q.coeffs.len() == 4, "box {max_box:?}: extra terms {:?}", q.coeffs);
        ensure!(
            q.coeffs.keys().all(|e| e[0] <= 1 && e[1] <= 1),
            "degree bounds violated: {:?}",
            q.coeffs.keys()
        );
        leaders.push(q.leading_component());
    }
    let want: std::collections::BTreeMap<Vec<u32>, LinComb> = [(vec![1, 1], LinComb::from_int(1))].into();
    ensure!(leaders.iter().all(|l| *l == want), "leading components {leaders:?}");
    Ok("(t1 + 1)(t2 + 1) on two boxes".into())
}

fn generator_invariance() -> Outcome {
    let q = BaseRing::Rationals;
    let cases = [
        ("R[z] over R[x1]", polynomial_ring_over_itself(q.clone()), 1u64),
        ("R[z] via (z^2, z^3)", two_generator_algebra_example(q.clone()), 3),
        ("Laurent (1, -1)", laurent_presentation(q.clone(), 1, 1).map_err(e2s)?, 2),
        ("Laurent (1, -3)", laurent_presentation(q, 1, 3).map_err(e2s)?, 4),
    ];
    for (name, m, c) in cases {
        let got = mu(&m, &m.all_generators(), LengthSpec::Dimension, &opts()).map_err(e2s)?;
        ensure!(got == MuMonomial::new(int_lv(c), 1), "{name}: mu = {got}");
        ensure!(lambda_dimension(&got).map_err(e2s)? == 1, "{name}: dimension");
    }
    Ok("t, 3t, 2t, 4t".into())
}

fn oracle_equivalence() -> Outcome {
    let r = oracle_equivalence_suite(DEFAULT_SEED, 100);
    ensure!(r.passed >= 100, "only {} checks", r.passed);
    ensure!(r.ok(), "{} failures: {:?}", r.failures.len(), r.failures);
    Ok(format!("{}/{} checks", r.passed, r.cases))
}

fn krull_dimension_mod_12() -> Outcome {
    let z12 = BaseRing::zmod(12);
    // (Z/12)[x] has Krull dimension 1; (Z/12)[x]/(x) = Z/12 and (Z/12)[x]/(x, 2) = Z/2 are finite
    let cases: [(&[&str], usize, fn(u64) -> LengthValue); 3] = [
        (&[], 1, |n| lg(12).scale(&Rational::from_integer((n + 1).into()))),
        (&["x"], 0, |_| lg(12)),
        (&["x", "2"], 0, |_| lg(2)),
    ];
    for (ideal, krull, growth) in cases {
        let m = quotient(z12.clone(), 1, ideal);
        let v0 = m.all_generators();
        // |S_n · 1| counted from the structure above
        let s = growth_series(&m, &v0, 6, LengthSpec::LogCard, &SliceOptions::default()).map_err(e2s)?;
        for (n, v) in s.values.iter().enumerate() {
            ensure!(*v == growth(n as u64), "J={ideal:?} n={n}: {v}");
        }
        let got = mu(&m, &v0, LengthSpec::LogCard, &opts()).map_err(e2s)?;
        let dim = lambda_dimension(&got).map_err(e2s)?;
        ensure!(dim == krull, "J={ideal:?}: dimension {dim}, Krull {krull}");
    }
    Ok("dimensions 1, 0, 0".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("table reproduction", table_reproduction),
        ("free-module formula", free_module_formula),
        ("degree of hypersurfaces", degree_of_hypersurfaces),
        ("Hilbert-Samuel comparison", samuel_comparison),
        ("additivity suite", additivity),
        ("intrinsic invariants", intrinsic),
        ("generating numerators", numerators),
        ("multigraded box fit", multigraded),
        ("generator invariance", generator_invariance),
        ("oracle equivalence", oracle_equivalence),
        ("Krull dimension over Z/12", krull_dimension_mod_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
