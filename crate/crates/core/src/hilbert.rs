//! Generating-function numerators, eventual polynomials and the invariants
//! read from their leading terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial, LengthValue, LinComb, MuMonomial, Rational};
use crate::error::{Error, Result};
use crate::modrepr::{Presentation, SubmoduleGens};
use crate::ring::LengthSpec;
use crate::slices::{growth_series, BoxValue, GrowthSeries, SeriesKind, SliceOptions};

/// `p(t)` with the sequence's generating function equal to `p(t) / ∏(1 − t^e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorPoly {
    pub coeffs: Vec<LinComb>,
    /// Exponents `e` of the denominator factors `(1 − t^e)`.
    pub denominator: Vec<u32>,
}

impl NumeratorPoly {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// First `len` coefficients of `p(t) / ∏(1 − t^e)`.
    pub fn expand(&self, len: usize) -> Vec<LinComb> {
        let mut out: Vec<LinComb> = (0..len)
            .map(|i| self.coeffs.get(i).cloned().unwrap_or_default())
            .collect();
        for &e in &self.denominator {
            let e = e as usize;
            for i in e..len {
                out[i] = &out[i] + &out[i - e];
            }
        }
        out
    }
}

impl fmt::Display for NumeratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|&e| if e == 1 { "(1-t)".to_string() } else { format!("(1-t^{e})") })
            .collect();
        write!(f, " / {}", den.join(""))
    }
}

/// Denominator exponents for a series: an extra `(1 − t)` for cumulative kinds.
pub fn denominator_for(kind: SeriesKind, weights: &[u32]) -> Result<Vec<u32>> {
    let mut d = match kind {
        SeriesKind::Growth | SeriesKind::Samuel => vec![1],
        SeriesKind::GradedSlice | SeriesKind::IntrinsicStep => Vec::new(),
        SeriesKind::MultiBox => {
            return Err(Error::Unsupported("numerators of box series".into()));
        }
    };
    d.extend_from_slice(weights);
    Ok(d)
}

fn finite_values(values: &[LengthValue]) -> Result<Vec<LinComb>> {
    values
        .iter()
        .map(|v| v.finite().cloned().ok_or(Error::NotLambdaFinite))
        .collect()
}

/// Numerator of the generating function of `values` over `∏(1 − t^e)`.
///
/// The truncated product must vanish on a trailing window of at least
/// `max(k + 2, 6)` coefficients, `k` the number of denominator factors.
pub fn numerator_of(values: &[LengthValue], denominator: &[u32]) -> Result<NumeratorPoly> {
    let mut c = finite_values(values)?;
    let len = c.len();
    for &e in denominator {
        let e = e as usize;
        for i in (e..len).rev() {
            c[i] = &c[i] - &c[i - e];
        }
    }
    let guard = (denominator.len() + 2).max(6);
    let deg = c.iter().rposition(|x| !x.is_zero()).map_or(0, |d| d + 1);
    if len < deg + guard {
        return Err(Error::NotRational(format!(
            "numerator support reaches {deg} of {len} computed terms, guard {guard}"
        )));
    }
    c.truncate(deg);
    Ok(NumeratorPoly {
        coeffs: c,
        denominator: denominator.to_vec(),
    })
}

/// Numerator of a series with the ring weights `γ̄`.
pub fn generating_numerator(series: &GrowthSeries, weights: &[u32]) -> Result<NumeratorPoly> {
    numerator_of(&series.values, &denominator_for(series.kind, weights)?)
}

/// A polynomial in `ℓ` variables with length-basis coefficients, agreeing
/// with a sampled sequence from `n0` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventualPolynomial {
    pub nvars: usize,
    /// Exponent vector to coefficient; zero coefficients are not stored.
    pub coeffs: BTreeMap<Vec<u32>, LinComb>,
    pub n0: Vec<u64>,
    pub degree_bound: Vec<u32>,
    /// Exact matches beyond the interpolation window.
    pub guard: usize,
}

impl EventualPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn coeff(&self, exps: &[u32]) -> LinComb {
        self.coeffs.get(exps).cloned().unwrap_or_default()
    }

    pub fn eval(&self, point: &[u64]) -> LinComb {
        let mut acc = LinComb::zero();
        for (e, c) in &self.coeffs {
            let mut m = BigInt::one();
            for (x, &k) in point.iter().zip(e) {
                m *= BigInt::from(*x).pow(k);
            }
            acc = &acc + &c.scale(&Rational::from_integer(m));
        }
        acc
    }

    /// The top-degree homogeneous part.
    pub fn leading_component(&self) -> BTreeMap<Vec<u32>, LinComb> {
        let Some(d) = self.total_degree() else {
            return BTreeMap::new();
        };
        self.coeffs
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    /// `q(n + 1) − q(n)` of a univariate polynomial, as a coefficient map.
    pub fn forward_difference(&self) -> BTreeMap<Vec<u32>, LinComb> {
        let mut out: BTreeMap<Vec<u32>, LinComb> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let d = e[0] as u64;
            for j in 0..d {
                let q = Rational::from_integer(binomial(d, j));
                let entry = out.entry(vec![j as u32]).or_default();
                *entry = &*entry + &c.scale(&q);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Leading monomial `m·t^d` of a univariate fit.
    pub fn leading_mu(&self) -> Result<MuMonomial> {
        let Some(d) = self.total_degree() else {
            return Ok(MuMonomial::Zero);
        };
        let c = self.coeff(&[d as u32]);
        let v = LengthValue::from_lincomb(c.clone()).ok_or_else(|| {
            Error::CheckFailed(format!("negative leading coefficient {c}"))
        })?;
        Ok(MuMonomial::new(v, d))
    }
}

impl fmt::Display for EventualPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let var = |i: usize| {
            if self.nvars == 1 {
                "n".to_string()
            } else {
                format!("n{}", i + 1)
            }
        };
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { var(i) } else { format!("{}^{k}", var(i)) })
                .collect();
            if mono.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*{}", mono.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficients of `binom(n - s, j)` as a polynomial in `n`.
fn shifted_binomial(s: u64, j: usize) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for i in 0..j {
        // multiply by (n - s - i) / (i + 1)
        let c = -Rational::from_integer(BigInt::from(s + i as u64));
        let mut q = vec![Rational::zero(); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            q[k + 1] += a;
            q[k] += a * &c;
        }
        let d = Rational::from_integer(BigInt::from(i + 1));
        p = q.into_iter().map(|x| x / &d).collect();
    }
    p
}

/// `Δ^{j} a` at every admissible index.
fn difference(a: &[LinComb], order: usize) -> Vec<LinComb> {
    let mut cur = a.to_vec();
    for _ in 0..order {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

/// Fit a polynomial of degree at most `max_deg` to the tail of `values`.
///
/// `n0` is the smallest index from which the `(max_deg+1)`-th differences
/// vanish; the tail must hold `max_deg + 1` interpolation points plus
/// `guard` further exact matches.
pub fn fit_values(values: &[LengthValue], max_deg: usize, guard: usize) -> Result<EventualPolynomial> {
    let a = finite_values(values)?;
    if a.len() < max_deg + guard + 2 {
        return Err(Error::NotStabilized(format!(
            "{} samples are too few for degree {max_deg} with guard {guard}",
            a.len()
        )));
    }
    let d = difference(&a, max_deg + 1);
    let n0 = d.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1);
    if a.len() - n0 < max_deg + 1 + guard {
        return Err(Error::NotStabilized(format!(
            "differences of order {} last nonzero at {}, {} samples",
            max_deg + 1,
            n0.saturating_sub(1),
            a.len()
        )));
    }
    let tail = &a[n0..];
    let mut poly = vec![LinComb::zero(); max_deg + 1];
    for j in 0..=max_deg {
        let dj = difference(&tail[..=j], j).pop().expect("one value");
        if dj.is_zero() {
            continue;
        }
        for (e, q) in shifted_binomial(n0 as u64, j).iter().enumerate() {
            poly[e] = &poly[e] + &dj.scale(q);
        }
    }
    let fit = EventualPolynomial {
        nvars: 1,
        coeffs: poly
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (vec![e as u32], c))
            .collect(),
        n0: vec![n0 as u64],
        degree_bound: vec![max_deg as u32],
        guard,
    };
    for (i, v) in a.iter().enumerate().skip(n0) {
        if fit.eval(&[i as u64]) != *v {
            return Err(Error::CheckFailed(format!("fit disagrees with the sample at n = {i}")));
        }
    }
    Ok(fit)
}

pub fn fit_eventual_polynomial(series: &GrowthSeries, max_deg: usize, guard: usize) -> Result<EventualPolynomial> {
    fit_values(&series.values, max_deg, guard)
}

/// Mixed forward difference `Δ^{order}` of a grid function at `at`.
fn mixed_difference(
    f: &dyn Fn(&[u64]) -> LinComb,
    at: &[u64],
    order: &[u32],
) -> LinComb {
    let mut acc = LinComb::zero();
    let mut l = vec![0u32; order.len()];
    loop {
        let mut sign_neg = false;
        let mut w = BigInt::one();
        let mut p = Vec::with_capacity(at.len());
        for j in 0..order.len() {
            w *= binomial(order[j] as u64, l[j] as u64);
            if (order[j] - l[j]) % 2 == 1 {
                sign_neg = !sign_neg;
            }
            p.push(at[j] + l[j] as u64);
        }
        if sign_neg {
            w = -w;
        }
        acc = &acc + &f(&p).scale(&Rational::from_integer(w));
        // next multi-index l ≤ order
        let mut j = 0;
        while j < l.len() {
            if l[j] < order[j] {
                l[j] += 1;
                break;
            }
            l[j] = 0;
            j += 1;
        }
        if j == l.len() {
            return acc;
        }
    }
}

/// Fit a multivariate polynomial with `deg_{t_j} ≤ bounds[j]` to box values.
///
/// The boxes must cover a full grid `[0, M_1] × … × [0, M_ℓ]`. The offset `s`
/// is the smallest value such that every per-variable difference of order
/// `bounds[j] + 1` vanishes on the subgrid `n̄ ≥ (s, …, s)`; each side must
/// keep `bounds[j] + 1 + guard` points.
pub fn fit_multivariate(boxes: &[BoxValue], bounds: &[u32], guard: usize) -> Result<EventualPolynomial> {
    let l = bounds.len();
    let mut table: BTreeMap<Vec<u64>, LinComb> = BTreeMap::new();
    let mut max = vec![0u64; l];
    for b in boxes {
        if b.index.len() != l {
            return Err(Error::Shape(format!("box of rank {} for {l} bounds", b.index.len())));
        }
        let v = b.value.finite().cloned().ok_or(Error::NotLambdaFinite)?;
        for j in 0..l {
            max[j] = max[j].max(b.index[j]);
        }
        table.insert(b.index.clone(), v);
    }
    let cells: u64 = max.iter().map(|m| m + 1).product();
    if cells as usize != table.len() {
        return Err(Error::Shape("box values do not fill a grid".into()));
    }
    let f = |p: &[u64]| table[p].clone();
    let fits_from = |s: u64| -> bool {
        (0..l).all(|j| max[j] >= s + bounds[j] as u64 + guard as u64)
    };
    // per-variable differences that do not vanish, and the least offset they allow
    let mut s = 0u64;
    for (p, _) in table.iter() {
        for j in 0..l {
            if p[j] + bounds[j] as u64 + 1 > max[j] {
                continue;
            }
            let mut ord = vec![0u32; l];
            ord[j] = bounds[j] + 1;
            if !mixed_difference(&f, p, &ord).is_zero() {
                let lo = *p.iter().min().expect("nonempty");
                s = s.max(lo + 1);
            }
        }
    }
    if !fits_from(s) {
        return Err(Error::NotStabilized(format!("box fit needs offset {s}, grid {max:?}")));
    }
    // tensor Newton form on [s, s + bounds]
    let mut coeffs: BTreeMap<Vec<u32>, LinComb> = BTreeMap::new();
    let mut ord = vec![0u32; l];
    let basis: Vec<Vec<Vec<Rational>>> = (0..l)
        .map(|j| (0..=bounds[j] as usize).map(|i| shifted_binomial(s, i)).collect())
        .collect();
    let at = vec![s; l];
    loop {
        let d = mixed_difference(&f, &at, &ord);
        if !d.is_zero() {
            let mut terms: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), Rational::one())];
            for j in 0..l {
                let b = &basis[j][ord[j] as usize];
                terms = terms
                    .into_iter()
                    .flat_map(|(e, q)| {
                        b.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| {
                            let mut e2 = e.clone();
                            e2.push(k as u32);
                            (e2, &q * c)
                        })
                    })
                    .collect();
            }
            for (e, q) in terms {
                let entry = coeffs.entry(e.clone()).or_default();
                *entry = &*entry + &d.scale(&q);
                if entry.is_zero() {
                    coeffs.remove(&e);
                }
            }
        }
        let mut j = 0;
        while j < l {
            if ord[j] < bounds[j] {
                ord[j] += 1;
                break;
            }
            ord[j] = 0;
            j += 1;
        }
        if j == l {
            break;
        }
    }
    let fit = EventualPolynomial {
        nvars: l,
        coeffs,
        n0: vec![s; l],
        degree_bound: bounds.to_vec(),
        guard,
    };
    for (p, v) in &table {
        if p.iter().all(|&x| x >= s) && fit.eval(p) != *v {
            return Err(Error::CheckFailed(format!("box fit disagrees at {p:?}")));
        }
    }
    Ok(fit)
}

/// Parameters of the adaptive sampling loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuOptions {
    /// Largest number of sampled steps.
    pub budget: u64,
    pub slice: SliceOptions,
}

impl Default for MuOptions {
    fn default() -> Self {
        MuOptions {
            budget: 64,
            slice: SliceOptions::default(),
        }
    }
}

/// A certified fit of an eventual polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFit {
    pub mu: MuMonomial,
    pub polynomial: EventualPolynomial,
    /// Largest sampled index.
    pub samples: u64,
    pub series: GrowthSeries,
}

/// Sample with `n = start, 2·start, …` until a fit with `n₀ ≤ N/2` appears.
pub(crate) fn fit_adaptive<F>(max_deg: usize, guard: usize, start: u64, budget: u64, mut sample: F) -> Result<MuFit>
where
    F: FnMut(u64) -> Result<GrowthSeries>,
{
    let mut n = start.min(budget).max((max_deg + guard + 2) as u64);
    let mut last_err;
    loop {
        let series = sample(n)?;
        match fit_values(&series.values, max_deg, guard) {
            Ok(p) if p.n0[0] <= n / 2 => {
                return Ok(MuFit {
                    mu: p.leading_mu()?,
                    polynomial: p,
                    samples: n,
                    series,
                });
            }
            Ok(p) => last_err = Error::NotStabilized(format!("fit starts at n0 = {} of N = {n}", p.n0[0])),
            Err(e @ (Error::NotStabilized(_) | Error::CheckFailed(_))) => last_err = e,
            Err(e) => return Err(e),
        }
        if n >= budget {
            return Err(match last_err {
                Error::NotStabilized(s) => Error::NotStabilized(format!("{s}; budget {budget} reached")),
                e => e,
            });
        }
        n = (2 * n).min(budget);
    }
}

/// Full certified fit of `λ(S_n V₀)`.
pub fn mu_fit(m: &Presentation, v0: &SubmoduleGens, spec: LengthSpec, opts: &MuOptions) -> Result<MuFit> {
    let k = m.k();
    let first = growth_series(m, v0, 0, spec, &opts.slice)?;
    if first.values[0].is_infinite() {
        return Err(Error::NotLambdaFinite);
    }
    fit_adaptive(k, k + 3, 2 * k as u64 + 8, opts.budget, |n| {
        growth_series(m, v0, n, spec, &opts.slice)
    })
}

/// Leading monomial `μ(M)` of the growth polynomial of `V₀`.
pub fn mu(m: &Presentation, v0: &SubmoduleGens, spec: LengthSpec, opts: &MuOptions) -> Result<MuMonomial> {
    Ok(mu_fit(m, v0, spec, opts)?.mu)
}

/// Degree of a nonzero `μ`.
pub fn lambda_dimension(mu: &MuMonomial) -> Result<usize> {
    mu.degree().ok_or(Error::ZeroMu)
}

/// `d!·m` for `μ = m·t^d`; zero for the zero monomial.
pub fn lambda_degree(mu: &MuMonomial) -> LengthValue {
    match mu {
        MuMonomial::Zero => LengthValue::zero(),
        MuMonomial::Term { coeff, degree } => coeff.scale(&factorial(*degree)),
    }
}

/// The `d`-dimensional entropy read from `μ`, normalized as `d!·m`.
pub fn entropy_d(mu: &MuMonomial, d: usize) -> LengthValue {
    match mu {
        MuMonomial::Zero => LengthValue::zero(),
        MuMonomial::Term { degree, .. } if *degree > d => LengthValue::Infinite,
        MuMonomial::Term { degree, .. } if *degree < d => LengthValue::zero(),
        MuMonomial::Term { .. } => lambda_degree(mu),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lv_of_group_order;
    use num_bigint::BigUint;

    fn ints(v: &[u64]) -> Vec<LengthValue> {
        v.iter().map(|&x| LengthValue::from_int(x)).collect()
    }

    fn lc(v: &[i64]) -> Vec<LinComb> {
        v.iter().map(|&x| LinComb::from_int(x)).collect()
    }

    #[test]
    fn numerators() {
        let a: Vec<u64> = (0..20u64).map(|n| (n + 1) * (n + 2) / 2).collect();
        let p = numerator_of(&ints(&a), &[1, 1, 1]).unwrap();
        assert_eq!(p.coeffs, lc(&[1]));
        let p = numerator_of(&ints(&[1, 3, 3, 3, 3, 3, 3, 3, 3]), &[1]).unwrap();
        assert_eq!(p.coeffs, lc(&[1, 2]));
        assert_eq!(p.expand(5), lc(&[1, 3, 3, 3, 3]));
        assert!(matches!(numerator_of(&ints(&[1, 2, 4, 8, 16, 32, 64, 128]), &[1]), Err(Error::NotRational(_))));
    }

    #[test]
    fn univariate_fits() {
        let p = fit_values(&ints(&[1, 2, 3, 4, 5, 6, 7]), 1, 3).unwrap();
        assert_eq!(p.n0, vec![0]);
        assert_eq!(p.coeff(&[1]), LinComb::from_int(1));
        assert_eq!(p.coeff(&[0]), LinComb::from_int(1));
        let q = fit_values(&ints(&[5, 7, 3, 4, 5, 6, 7]), 1, 3).unwrap();
        assert_eq!(q.n0, vec![2]);
        assert_eq!(q.coeffs, p.coeffs);
        let l2 = lv_of_group_order(&BigUint::from(2u32));
        let tri: Vec<LengthValue> = (0..12u64).map(|n| l2.scale(&Rational::from_integer(((n + 1) * (n + 2) / 2).into()))).collect();
        let r = fit_values(&tri, 2, 4).unwrap();
        let mu = r.leading_mu().unwrap();
        assert_eq!(mu, MuMonomial::new(l2.scale(&crate::arith::rat(1, 2)), 2));
        assert_eq!(lambda_degree(&mu), l2);
    }

    #[test]
    fn box_fit_of_a_product() {
        let mut boxes = Vec::new();
        for i in 0..6u64 {
            for j in 0..5u64 {
                let v = if i == 0 && j == 0 { 7 } else { (i + 1) * (j + 1) };
                boxes.push(BoxValue { index: vec![i, j], value: LengthValue::from_int(v) });
            }
        }
        let p = fit_multivariate(&boxes, &[1, 1], 2).unwrap();
        assert_eq!(p.n0, vec![1, 1]);
        assert_eq!(p.leading_component().len(), 1);
        assert_eq!(p.coeff(&[1, 1]), LinComb::from_int(1));
        assert_eq!(p.coeff(&[0, 0]), LinComb::from_int(1));
    }

    #[test]
    fn entropies() {
        let two_t = MuMonomial::new(LengthValue::from_int(2), 1);
        assert_eq!(entropy_d(&two_t, 1), LengthValue::from_int(2));
        assert!(entropy_d(&two_t, 0).is_infinite());
        assert!(entropy_d(&MuMonomial::Zero, 2).is_zero());
        assert_eq!(lambda_dimension(&MuMonomial::Zero), Err(Error::ZeroMu));
    }
}
