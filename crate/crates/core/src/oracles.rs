//! Brute-force oracles and seeded randomized suites.

use std::collections::{HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{int, lv_add, lv_of_group_order, mu_oplus, LengthValue, LinComb, MuMonomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::DEFAULT_GB_BUDGET;
use crate::hilbert::{entropy_d, fit_multivariate, mu_fit, MuOptions};
use crate::linalg::{fp_module_length, intersect_spans, Echelon, IntMatrix, Row};
use crate::modrepr::{Presentation, RingSpec, SubmoduleGens};
use crate::poly::{monomials_up_to, FreeVec, Monomial, Poly};
use crate::ring::{BaseRing, IntRing, LengthSpec, Ring};
use crate::slices::{groebner_ambient, growth_value, multibox_value, BoxValue};
use crate::with_ring;

/// Order of a finite abelian group, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

/// Largest ambient rank accepted by [`brute_force_group_order`].
pub const BRUTE_FORCE_MAX_RANK: usize = 6;
/// Largest number of cosets enumerated.
pub const BRUTE_FORCE_MAX_COSETS: usize = 1_000_000;

/// `|Z^g / rowspan(rel)|` by breadth-first enumeration of cosets.
///
/// Cosets are identified by their reduced representative against a
/// triangular basis of the row lattice; the walk adds unit vectors until
/// no new coset appears.
pub fn brute_force_group_order(rel: &IntMatrix) -> Result<GroupOrder> {
    let g = rel.cols();
    if g > BRUTE_FORCE_MAX_RANK {
        return Err(Error::TooLarge(format!("ambient rank {g}")));
    }
    let mut basis = Echelon::new(IntRing, g);
    for r in rel.rows_iter() {
        basis.insert(r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())));
    }
    if basis.rank() < g {
        return Ok(GroupOrder::Infinite);
    }
    let canon = |v: &[BigInt]| -> Vec<BigInt> {
        let red = basis.reduce(v.iter().enumerate().map(|(j, x)| (j, x.clone())));
        let mut out = vec![BigInt::zero(); g];
        for (j, x) in red {
            out[j] = x;
        }
        out
    };
    let start = vec![BigInt::zero(); g];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..g {
            let mut w = v.clone();
            w[i] += 1;
            let w = canon(&w);
            if seen.insert(w.clone()) {
                if seen.len() > BRUTE_FORCE_MAX_COSETS {
                    return Err(Error::TooLarge(format!("more than {BRUTE_FORCE_MAX_COSETS} cosets")));
                }
                queue.push_back(w);
            }
        }
    }
    Ok(GroupOrder::Finite(seen.len() as u64))
}

/// Coefficient of `t̄^n̄` in `∏ 1/(1 − t_i)^{γ_i}`, by repeated convolution with `1/(1 − t)`.
pub fn binom_series_oracle(gamma: &[u32], n: &[u64]) -> BigUint {
    let mut out = BigUint::from(1u32);
    for (&g, &ni) in gamma.iter().zip(n) {
        let len = ni as usize + 1;
        let mut a = vec![BigUint::zero(); len];
        a[0] = BigUint::from(1u32);
        for _ in 0..g {
            for j in 1..len {
                let prev = a[j - 1].clone();
                a[j] += prev;
            }
        }
        out *= &a[len - 1];
    }
    out
}

/// Number of monomials of weighted degree `<= n` for every `n <= n_max`: the
/// coefficients of `1/((1 − t)·∏ (1 − t^{γ_i}))`, one convolution per factor.
pub fn weighted_growth_oracle(weights: &[u32], n_max: u64) -> Vec<BigUint> {
    let len = n_max as usize + 1;
    let mut a = vec![BigUint::from(1u32); len];
    for &w in weights {
        let w = w as usize;
        for j in w..len {
            let prev = a[j - w].clone();
            a[j] += prev;
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCheck {
    pub n: u64,
    pub a: LengthValue,
    pub b: LengthValue,
    pub c: LengthValue,
}

/// Witness data of an additivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub mu_b: MuMonomial,
    pub mu_a: MuMonomial,
    pub mu_c: MuMonomial,
    pub slices: Vec<SliceCheck>,
    pub passed: bool,
}

/// `λ(A ∩ B_n)` where `A` is the image of `N_C` in `B`, read from the
/// intersection of `F_{≤n} + N_B` with `N_C` in a window one degree larger.
fn slice_intersection<R: Ring>(ring: R, b: &Presentation, c: &Presentation, n: u64, spec: LengthSpec) -> Result<LengthValue> {
    let w = b.ring().weights.clone();
    let d = n + 1;
    let amb_b = groebner_ambient(ring.clone(), b, &w, d, DEFAULT_GB_BUDGET)?;
    let amb_c = groebner_ambient(ring.clone(), c, &w, d, DEFAULT_GB_BUDGET)?;
    debug_assert_eq!(amb_b.keys, amb_c.keys);
    let one = ring.one();
    let mut x: Vec<Row<R::Elem>> = amb_b.base.rows().cloned().collect();
    for (col, t) in amb_b.keys.iter().enumerate() {
        if t.degree() <= n {
            x.push(vec![(col, one.clone())]);
        }
    }
    let y: Vec<Row<R::Elem>> = amb_c.base.rows().cloned().collect();
    let meet = intersect_spans(&ring, amb_b.ncols(), &x, &y);
    let mut cur = amb_b.base.clone();
    for r in meet {
        cur.insert(r);
    }
    amb_b.excess(&cur, spec)
}

/// Check `μ(B) = μ(A) ⊕ μ(C)` for `A = S·A₀ ⊆ B` and `C = B / A`, and
/// `λ(A ∩ B_n) + λ(C_n) = λ(B_n)` for `n ≤ slice_max`.
pub fn additivity_check(
    b: &Presentation,
    a0: &SubmoduleGens,
    spec: LengthSpec,
    opts: &MuOptions,
    slice_max: u64,
) -> Result<AdditivityReport> {
    a0.check(b)?;
    let c = b.with_relations(&a0.elements)?;
    let all_b = b.all_generators();
    let mu_b = mu_fit(b, &all_b, spec, opts)?.mu;
    let mu_a = mu_fit(b, a0, spec, opts)?.mu;
    let mu_c = mu_fit(&c, &c.all_generators(), spec, opts)?.mu;
    let mut passed = mu_b == mu_oplus(&mu_a, &mu_c);
    let mut slices = Vec::new();
    let bu = b.ungraded();
    let cu = c.ungraded();
    for n in 0..=slice_max {
        let lb = growth_value(b, &all_b, n, spec)?;
        let lc = growth_value(&c, &c.all_generators(), n, spec)?;
        let la = with_ring!(b.base(), |r| slice_intersection(r, &bu, &cu, n, spec)?);
        passed &= lv_add(&la, &lc) == lb;
        slices.push(SliceCheck { n, a: la, b: lb, c: lc });
    }
    let report = AdditivityReport {
        mu_b,
        mu_a,
        mu_c,
        slices,
        passed,
    };
    if !passed {
        return Err(Error::CheckFailed(serde_json::to_string(&report).unwrap_or_default()));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyAdditivityReport {
    pub d: usize,
    pub h_b: LengthValue,
    pub h_a: LengthValue,
    pub h_c: LengthValue,
    pub passed: bool,
}

/// Check `h^{(d)}(B) = h^{(d)}(A) + h^{(d)}(C)`.
pub fn entropy_additivity_check(
    b: &Presentation,
    a0: &SubmoduleGens,
    d: usize,
    spec: LengthSpec,
    opts: &MuOptions,
) -> Result<EntropyAdditivityReport> {
    a0.check(b)?;
    let c = b.with_relations(&a0.elements)?;
    let h_b = entropy_d(&mu_fit(b, &b.all_generators(), spec, opts)?.mu, d);
    let h_a = entropy_d(&mu_fit(b, a0, spec, opts)?.mu, d);
    let h_c = entropy_d(&mu_fit(&c, &c.all_generators(), spec, opts)?.mu, d);
    let passed = lv_add(&h_a, &h_c) == h_b;
    let report = EntropyAdditivityReport { d, h_b, h_a, h_c, passed };
    if !passed {
        return Err(Error::CheckFailed(serde_json::to_string(&report).unwrap_or_default()));
    }
    Ok(report)
}

/// Random polynomial with up to `max_terms` terms of degree at most `max_deg`
/// and coefficients in `[-5, 5]`.
pub fn random_poly(rng: &mut impl Rng, ring: &RingSpec, max_deg: u64, max_terms: usize) -> Poly<Rational> {
    let monos = monomials_up_to(ring.k, max_deg, &ring.weights);
    let mut p = Poly::zero(ring.k);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c: i64 = rng.gen_range(-5..=5);
        if let Some(c) = ring.base.canonical(&int(c)) {
            p.add_term(&ring.base, m, c);
        }
    }
    p
}

/// Random vector in `S^g`, mostly sparse.
pub fn random_vector(rng: &mut impl Rng, ring: &RingSpec, gens: usize, max_deg: u64) -> FreeVec<Rational> {
    let comps = (0..gens)
        .map(|_| {
            if rng.gen_bool(0.6) {
                random_poly(rng, ring, max_deg, 3)
            } else {
                Poly::zero(ring.k)
            }
        })
        .collect();
    FreeVec::new(comps)
}

/// Presentation with at most 3 generators and 4 relations of degree at most 3.
pub fn random_presentation(rng: &mut impl Rng, ring: &RingSpec) -> Presentation {
    let gens = rng.gen_range(1..=3);
    let nrel = rng.gen_range(0..=4);
    let rels = (0..nrel).map(|_| random_vector(rng, ring, gens, 3)).collect();
    Presentation::new(ring.clone(), gens, None, rels).expect("random relations have the right shape")
}

/// One or two random elements of degree at most 2, not all zero.
pub fn random_submodule(rng: &mut impl Rng, m: &Presentation) -> SubmoduleGens {
    let count = rng.gen_range(1..=2);
    let mut elems: Vec<FreeVec<Rational>> = (0..count)
        .map(|_| random_vector(rng, m.ring(), m.gens(), 2))
        .filter(|v| !v.is_zero())
        .collect();
    if elems.is_empty() {
        elems.push(m.unit(0));
    }
    SubmoduleGens::new(elems)
}

/// `S / I` for a random monomial ideal `I`, graded.
pub fn random_monomial_ideal(rng: &mut impl Rng, base: BaseRing, k: usize) -> Presentation {
    let ring = RingSpec::new(base, k);
    let count = rng.gen_range(1..=3);
    let gens: Vec<Poly<Rational>> = (0..count)
        .map(|_| {
            let e: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=2)).collect();
            let e = if e.iter().all(|&x| x == 0) {
                let mut e = e;
                e[rng.gen_range(0..k)] = 1;
                e
            } else {
                e
            };
            Poly::monomial(&ring.base, Monomial(e), int(1))
        })
        .collect();
    crate::modrepr::from_ideal_quotient(ring, &gens).expect("monomial ideals are homogeneous")
}

/// Integer matrix with entries in `[-bound, bound]`.
pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    IntMatrix::new(cols, data).expect("rectangular")
}

/// Outcome of a randomized suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, label: String, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => self.failures.push(format!("{label}: mismatch")),
            Err(e) => self.failures.push(format!("{label}: {e}")),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const DEFAULT_SEED: u64 = 20240607;

/// `(B, A₀, spec)` triples: `F_5[x,y]` cases, then `Z[x]` cases half with
/// rank and half with log-cardinality after adjoining `m·e_i`.
pub fn additivity_cases(seed: u64, n_f5: usize, n_z: usize) -> Vec<(Presentation, SubmoduleGens, LengthSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let f5 = RingSpec::new(BaseRing::PrimeField(5), 2);
    for _ in 0..n_f5 {
        let b = random_presentation(&mut rng, &f5);
        let a0 = random_submodule(&mut rng, &b);
        out.push((b, a0, LengthSpec::Dimension));
    }
    let zx = RingSpec::new(BaseRing::Integers, 1);
    for i in 0..n_z {
        let mut b = random_presentation(&mut rng, &zx);
        let spec = if i % 2 == 0 {
            LengthSpec::Rank
        } else {
            let m: i64 = rng.gen_range(2..=6);
            let extra: Vec<_> = (0..b.gens()).map(|j| b.vector(j, zx.constant(m))).collect();
            b = b.with_relations(&extra).expect("same shape");
            LengthSpec::LogCard
        };
        let a0 = random_submodule(&mut rng, &b);
        out.push((b, a0, spec));
    }
    out
}

pub fn additivity_suite(seed: u64, n_f5: usize, n_z: usize, slice_max: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("additivity", seed);
    let opts = MuOptions::default();
    for (i, (b, a0, spec)) in additivity_cases(seed, n_f5, n_z).into_iter().enumerate() {
        let out = additivity_check(&b, &a0, spec, &opts, slice_max).map(|r| r.passed);
        rep.record(format!("case {i} over {}", b.base()), out);
    }
    rep
}

pub fn entropy_additivity_suite(seed: u64, n_f5: usize, n_z: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("entropy-additivity", seed);
    let opts = MuOptions::default();
    for (i, (b, a0, spec)) in additivity_cases(seed, n_f5, n_z).into_iter().enumerate() {
        for d in 0..=b.k() {
            let out = entropy_additivity_check(&b, &a0, d, spec, &opts).map(|r| r.passed);
            rep.record(format!("case {i}, d = {d}"), out);
        }
    }
    rep
}

/// SNF lengths against coset enumeration, and box fits against the binomial oracle.
pub fn oracle_equivalence_suite(seed: u64, n_matrices: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle-equivalence", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut finite = 0;
    while finite < n_matrices {
        let cols = rng.gen_range(1..=3);
        let rows = rng.gen_range(cols..=cols + 2);
        let m = random_int_matrix(&mut rng, rows, cols, 6);
        let Some(order) = crate::linalg::cokernel_order(&m) else {
            let out = brute_force_group_order(&m).map(|o| o == GroupOrder::Infinite);
            rep.record(format!("infinite cokernel {rows}x{cols}"), out);
            continue;
        };
        if order > BigInt::from(10_000) {
            continue;
        }
        finite += 1;
        let out = (|| {
            let brute = brute_force_group_order(&m)?;
            let lv = fp_module_length(&m, &BaseRing::Integers, LengthSpec::LogCard)?;
            Ok(match brute {
                GroupOrder::Finite(n) => lv == lv_of_group_order(&BigUint::from(n)) && order.to_u64() == Some(n),
                GroupOrder::Infinite => false,
            })
        })();
        rep.record(format!("matrix {rows}x{cols} of order {order}"), out);
    }
    for g1 in 1..=3u32 {
        for g2 in 1..=3u32 {
            rep.record(format!("binomial fit for ({g1},{g2})"), binomial_fit_matches(&[g1, g2]));
        }
    }
    for g1 in 2..=3u32 {
        for g2 in 2..=3u32 {
            rep.record(format!("free box growth for ({g1},{g2})"), free_boxes_match(&[g1, g2]));
        }
    }
    rep
}

/// Fit the oracle coefficients on a grid and compare at every grid point.
pub fn binomial_fit_matches(gamma: &[u32]) -> Result<bool> {
    let side = 6u64;
    let grid = box_grid(&vec![side; gamma.len()]);
    let boxes: Vec<BoxValue> = grid
        .iter()
        .map(|p| BoxValue {
            index: p.clone(),
            value: LengthValue::Finite(LinComb::unit(Rational::from_integer(
                binom_series_oracle(gamma, p).into(),
            ))),
        })
        .collect();
    let bounds: Vec<u32> = gamma.iter().map(|g| g - 1).collect();
    let fit = fit_multivariate(&boxes, &bounds, 2)?;
    let bounded = fit
        .coeffs
        .keys()
        .all(|e| e.iter().zip(&bounds).all(|(x, b)| x <= b));
    Ok(bounded
        && boxes.iter().all(|b| b.value.finite() == Some(&fit.eval(&b.index))))
}

/// `λ(S_{≤m̄}·1)` of the free module over `Q` with blocks of sizes `γ − 1`
/// equals the oracle coefficient.
pub fn free_boxes_match(gamma: &[u32]) -> Result<bool> {
    let sizes: Vec<usize> = gamma.iter().map(|&g| g as usize - 1).collect();
    let k: usize = sizes.iter().sum();
    let mut blocks = Vec::new();
    let mut next = 0;
    for s in &sizes {
        blocks.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let m = Presentation::free(RingSpec::new(BaseRing::Rationals, k), 1);
    let v0 = m.all_generators();
    for idx in box_grid(&vec![3; gamma.len()]) {
        let got = multibox_value(&m, &v0, &blocks, &idx, LengthSpec::Dimension)?;
        let want = LengthValue::from_int(binom_series_oracle(gamma, &idx).to_u64().expect("small"));
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn box_grid(max: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &m in max {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=m).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}
