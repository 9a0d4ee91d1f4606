//! Derived invariants: the Samuel leading term, the hat chain over
//! `M / mM`, the intrinsic invariants of inert submodules and a lower bound
//! for the general invariant from explicit small families.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{lv_compare, mu_compare, mu_join, LengthValue, LinComb, LvOrdering, MuMonomial, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{entropy_d, fit_adaptive, mu_fit, MuFit, MuOptions};
use crate::modrepr::{quotient_mod_integer, Presentation, SubmoduleGens};
use crate::ring::{BaseRing, LengthSpec};
use crate::slices::{growth_series, intrinsic_series, samuel_series, samuel_value};

const COMPARE_BITS: u32 = 64;

/// Certified fit of the Samuel sequence `λ(M / I^{n+1} M)`.
pub fn samuel_fit(m: &Presentation, spec: LengthSpec, opts: &MuOptions) -> Result<MuFit> {
    if samuel_value(m, 0, spec)?.is_infinite() {
        return Err(Error::NotLambdaFinite);
    }
    let k = m.k();
    fit_adaptive(k, k + 3, 2 * k as u64 + 8, opts.budget, |n| samuel_series(m, n, spec))
}

/// Leading term `μ̄(M)` of the Samuel polynomial.
pub fn samuel_mu_bar(m: &Presentation, spec: LengthSpec, opts: &MuOptions) -> Result<MuMonomial> {
    Ok(samuel_fit(m, spec, opts)?.mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HatVerdict {
    Stabilized,
    UnboundedEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatStep {
    pub modulus: BigUint,
    pub mu: MuMonomial,
    /// Running supremum through this step.
    pub sup: MuMonomial,
}

/// Lower-bound estimate of `μ̂` along `M / m_j M`, `m_j = lcm(1..j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatEstimate {
    pub chain: Vec<HatStep>,
    pub sup: MuMonomial,
    pub verdict: HatVerdict,
}

/// Chain values beyond this many multiples of `log 2` count as unbounded.
pub const UNBOUNDED_LOG2_MULTIPLE: u64 = 1 << 20;
/// Consecutive strict increases that count as unbounded.
pub const UNBOUNDED_RUN: usize = 5;
/// Trailing equal suprema that certify stabilization.
pub const STABLE_RUN: usize = 3;

/// Distinct values of `lcm(1..j)` for `j = 2..=len`.
pub fn lcm_chain(len: u64) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::new();
    let mut acc = BigUint::one();
    for j in 2..=len {
        acc = acc.lcm(&BigUint::from(j));
        if out.last() != Some(&acc) {
            out.push(acc.clone());
        }
    }
    out
}

fn threshold() -> LengthValue {
    LengthValue::Finite(LinComb::log_prime(
        BigUint::from(2u32),
        Rational::from_integer(UNBOUNDED_LOG2_MULTIPLE.into()),
    ))
}

fn verdict<T>(sups: &[T], equal: impl Fn(&T, &T) -> bool, greater: impl Fn(&T, &T) -> bool, huge: bool) -> HatVerdict {
    let n = sups.len();
    if n >= STABLE_RUN && sups[n - STABLE_RUN..].windows(2).all(|w| equal(&w[0], &w[1])) {
        return HatVerdict::Stabilized;
    }
    let run = sups.windows(2).rev().take_while(|w| greater(&w[1], &w[0])).count();
    if huge || run >= UNBOUNDED_RUN {
        return HatVerdict::UnboundedEvidence;
    }
    HatVerdict::Inconclusive
}

fn check_integers(m: &Presentation) -> Result<()> {
    if m.base() != &BaseRing::Integers {
        return Err(Error::WrongBase(m.base().to_string()));
    }
    Ok(())
}

/// Fold `μ(M / m M)` along the chain with a running supremum.
pub fn hat_mu_chain(m: &Presentation, chain_len: u64, spec: LengthSpec, opts: &MuOptions) -> Result<HatEstimate> {
    check_integers(m)?;
    let moduli = lcm_chain(chain_len);
    let mus = moduli
        .par_iter()
        .map(|q| {
            let mq = quotient_mod_integer(m, q)?;
            crate::hilbert::mu(&mq, &mq.all_generators(), spec, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sup = MuMonomial::Zero;
    let mut chain = Vec::new();
    for (q, mu) in moduli.into_iter().zip(mus) {
        sup = mu_join(&sup, &mu);
        chain.push(HatStep {
            modulus: q,
            mu,
            sup: sup.clone(),
        });
    }
    let sups: Vec<MuMonomial> = chain.iter().map(|s| s.sup.clone()).collect();
    let big = threshold();
    let huge = sups
        .iter()
        .any(|s| lv_compare(&s.coeff(), &big, COMPARE_BITS) == LvOrdering::Greater);
    let v = verdict(
        &sups,
        |a, b| a == b,
        |a, b| mu_compare(a, b, COMPARE_BITS) == LvOrdering::Greater,
        huge,
    );
    Ok(HatEstimate { chain, sup, verdict: v })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatEntropyStep {
    pub modulus: BigUint,
    pub value: LengthValue,
    pub sup: LengthValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatEntropy {
    pub d: usize,
    pub chain: Vec<HatEntropyStep>,
    pub sup: LengthValue,
    pub verdict: HatVerdict,
}

/// `h^{(d)}` of `M / m M` along the chain, with a running supremum.
pub fn hat_entropy_d(m: &Presentation, d: usize, chain_len: u64, opts: &MuOptions) -> Result<HatEntropy> {
    let est = hat_mu_chain(m, chain_len, LengthSpec::LogCard, opts)?;
    Ok(hat_entropy_of(&est, d))
}

/// [`hat_entropy_d`] read off an already computed chain.
pub fn hat_entropy_of(est: &HatEstimate, d: usize) -> HatEntropy {
    let mut sup = LengthValue::zero();
    let mut chain = Vec::new();
    for step in &est.chain {
        let value = entropy_d(&step.mu, d);
        if lv_compare(&value, &sup, COMPARE_BITS) == LvOrdering::Greater {
            sup = value.clone();
        }
        chain.push(HatEntropyStep {
            modulus: step.modulus.clone(),
            value,
            sup: sup.clone(),
        });
    }
    let sups: Vec<LengthValue> = chain.iter().map(|s| s.sup.clone()).collect();
    let big = threshold();
    let huge = sups
        .iter()
        .any(|s| s.is_infinite() || lv_compare(s, &big, COMPARE_BITS) == LvOrdering::Greater);
    let v = verdict(
        &sups,
        |a, b| a == b,
        |a, b| lv_compare(a, b, COMPARE_BITS) == LvOrdering::Greater,
        huge,
    );
    HatEntropy { d, chain, sup, verdict: v }
}

/// Certified fit of the steps `λ(S_{n+1} V₀ / S_n V₀)`.
pub fn intrinsic_fit(m: &Presentation, v0: &SubmoduleGens, spec: LengthSpec, opts: &MuOptions) -> Result<MuFit> {
    let first = intrinsic_series(m, v0, 0, spec, &opts.slice)?;
    if first.values[0].is_infinite() {
        return Err(Error::NotInert);
    }
    let k = m.k();
    let deg = k.saturating_sub(1);
    fit_adaptive(deg, k + 3, 2 * k as u64 + 8, opts.budget, |n| {
        intrinsic_series(m, v0, n, spec, &opts.slice)
    })
}

/// Leading term `μ̃[V₀]` of the intrinsic polynomial.
pub fn intrinsic_mu(m: &Presentation, v0: &SubmoduleGens, spec: LengthSpec, opts: &MuOptions) -> Result<MuMonomial> {
    Ok(intrinsic_fit(m, v0, spec, opts)?.mu)
}

/// A dimension that may be `−∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntrinsicDimension {
    NegInfinity,
    Finite(usize),
}

impl std::fmt::Display for IntrinsicDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntrinsicDimension::NegInfinity => write!(f, "-inf"),
            IntrinsicDimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `d + 1` for `μ̃ = s·t^d`; otherwise `0` or `−∞` according to `λ(A)`.
pub fn intrinsic_dimension(mu_tilde: &MuMonomial, lambda_a: &LengthValue) -> IntrinsicDimension {
    match mu_tilde.degree() {
        Some(d) => IntrinsicDimension::Finite(d + 1),
        None if lambda_a.is_zero() => IntrinsicDimension::NegInfinity,
        None => IntrinsicDimension::Finite(0),
    }
}

/// `h̃^{(i)}`, normalized as `(d+1)!·s` at `i = d + 1`.
pub fn intrinsic_entropy_i(mu_tilde: &MuMonomial, i: usize, lambda_a: &LengthValue) -> LengthValue {
    if i == 0 {
        return lambda_a.clone();
    }
    match mu_tilde {
        MuMonomial::Zero => LengthValue::zero(),
        MuMonomial::Term { coeff, degree } => {
            if i <= *degree {
                LengthValue::Infinite
            } else if i == degree + 1 {
                coeff.scale(&crate::arith::factorial(degree + 1))
            } else {
                LengthValue::zero()
            }
        }
    }
}

/// `λ(M)`: finite exactly when the growth of all generators is eventually constant.
pub fn module_length(m: &Presentation, spec: LengthSpec, opts: &MuOptions) -> Result<LengthValue> {
    let all = m.all_generators();
    let first = growth_series(m, &all, 0, spec, &opts.slice)?;
    if first.values[0].is_infinite() {
        return Ok(LengthValue::Infinite);
    }
    let fit = mu_fit(m, &all, spec, opts)?;
    Ok(match fit.mu {
        MuMonomial::Zero => LengthValue::zero(),
        MuMonomial::Term { degree: 0, coeff } => coeff,
        MuMonomial::Term { .. } => LengthValue::Infinite,
    })
}

/// Join of `μ` over the families with finite `λ(V₀)`; families of infinite
/// length are skipped. A lower bound for the supremum over all small submodules.
pub fn mu_general_lower_bound(
    m: &Presentation,
    families: &[SubmoduleGens],
    spec: LengthSpec,
    opts: &MuOptions,
) -> Result<MuMonomial> {
    let mut sup = MuMonomial::Zero;
    for v0 in families {
        match mu_fit(m, v0, spec, opts) {
            Ok(f) => sup = mu_join(&sup, &f.mu),
            Err(Error::NotLambdaFinite) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_moduli() {
        let c: Vec<u64> = lcm_chain(8).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(c, vec![2, 6, 12, 60, 420, 840]);
    }

    #[test]
    fn intrinsic_cases() {
        let l2 = crate::arith::lv_of_group_order(&BigUint::from(2u32));
        let mt = MuMonomial::new(l2.clone(), 0);
        assert_eq!(intrinsic_entropy_i(&mt, 1, &LengthValue::Infinite), l2);
        assert_eq!(intrinsic_dimension(&mt, &LengthValue::Infinite), IntrinsicDimension::Finite(1));
        assert!(intrinsic_entropy_i(&MuMonomial::Zero, 1, &LengthValue::from_int(3)).is_zero());
        assert_eq!(
            intrinsic_dimension(&MuMonomial::Zero, &LengthValue::zero()),
            IntrinsicDimension::NegInfinity
        );
    }
}
