//! Monomials, polynomials, free-module vectors and the term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, Rational};
use crate::ring::Coeffs;

/// Exponent vector `x^a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(k: usize) -> Self {
        Monomial(vec![0; k])
    }

    pub fn var(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        weighted_degree(self, weights)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Degree restricted to the variables of one block.
    pub fn block_degree(&self, block: &[usize]) -> u64 {
        block.iter().map(|&i| self.0[i] as u64).sum()
    }
}

/// `Σ jᵢγᵢ`.
pub fn weighted_degree(m: &Monomial, weights: &[u32]) -> u64 {
    m.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
}

/// All monomials in `k` variables of weighted degree exactly `n`, in decreasing
/// term order.
pub fn monomials_of_degree(k: usize, n: u64, weights: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fill(k, 0, n, weights, &mut cur, &mut out);
    let order = TermOrder::new(weights.to_vec());
    out.sort_by(|a, b| order.cmp_mono(b, a));
    out
}

fn fill(k: usize, i: usize, rest: u64, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == k {
        if rest == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let wi = w[i] as u64;
    let mut e = 0u64;
    while e * wi <= rest {
        cur[i] = e as u32;
        fill(k, i + 1, rest - e * wi, w, cur, out);
        e += 1;
    }
    cur[i] = 0;
}

/// All monomials of weighted degree `<= n`, grouped by increasing degree and
/// decreasing term order inside each degree.
pub fn monomials_up_to(k: usize, n: u64, weights: &[u32]) -> Vec<Monomial> {
    assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
    (0..=n).flat_map(|d| monomials_of_degree(k, d, weights)).collect()
}

/// A basis element `x^a e_pos` of a free module.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Term {
    pub mono: Monomial,
    pub pos: usize,
}

impl Term {
    pub fn new(mono: Monomial, pos: usize) -> Self {
        Term { mono, pos }
    }
}

/// Weighted graded reverse lexicographic order on monomials, extended
/// term-over-position to free modules (lower generator index is larger).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<u32>,
}

impl TermOrder {
    pub fn new(weights: Vec<u32>) -> Self {
        TermOrder { weights }
    }

    pub fn standard(k: usize) -> Self {
        TermOrder { weights: vec![1; k] }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        weighted_degree(m, &self.weights)
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.degree(a).cmp(&self.degree(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // a smaller exponent in the last differing variable means larger
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp_term(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp_mono(&a.mono, &b.mono).then(b.pos.cmp(&a.pos))
    }
}

/// A polynomial with coefficients `E`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    terms: BTreeMap<Monomial, E>,
    nvars: usize,
}

impl<E: Clone> Poly<E> {
    pub fn zero(k: usize) -> Self {
        Poly {
            terms: BTreeMap::new(),
            nvars: k,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Terms sorted in decreasing order.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &E)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp_mono(b.0, a.0));
        v
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.keys().map(|m| weighted_degree(m, weights)).max()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` if every term has weighted degree `d`; zero is homogeneous of any degree.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<Option<u64>> {
        let mut degs = self.terms.keys().map(|m| weighted_degree(m, weights));
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn map_coeffs<F, T: Clone>(&self, mut f: F) -> Poly<T>
    where
        F: FnMut(&E) -> T,
    {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
            nvars: self.nvars,
        }
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn from_terms<C>(ring: &C, k: usize, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self
    where
        C: Coeffs<Elem = E>,
    {
        let mut p = Poly::zero(k);
        for (m, c) in terms {
            assert_eq!(m.nvars(), k, "monomial has the wrong number of variables");
            p.add_term(ring, m, c);
        }
        p
    }

    pub fn constant<C: Coeffs<Elem = E>>(ring: &C, k: usize, c: E) -> Self {
        Poly::from_terms(ring, k, [(Monomial::one(k), c)])
    }

    pub fn monomial<C: Coeffs<Elem = E>>(ring: &C, m: Monomial, c: E) -> Self {
        let k = m.nvars();
        Poly::from_terms(ring, k, [(m, c)])
    }

    pub fn var<C: Coeffs<Elem = E>>(ring: &C, k: usize, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(k, i), ring.one())
    }

    pub fn add_term<C: Coeffs<Elem = E>>(&mut self, ring: &C, m: Monomial, c: E) {
        let entry = self.terms.remove(&m);
        let c = match entry {
            Some(old) => ring.add(&old, &c),
            None => ring.add(&ring.zero(), &c),
        };
        if !ring.is_zero(&c) {
            self.terms.insert(m, c);
        }
    }

    pub fn add<C: Coeffs<Elem = E>>(&self, ring: &C, other: &Poly<E>) -> Poly<E> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(ring, m.clone(), c.clone());
        }
        out
    }

    pub fn neg<C: Coeffs<Elem = E>>(&self, ring: &C) -> Poly<E> {
        self.map_coeffs(|c| ring.neg(c))
    }

    pub fn sub<C: Coeffs<Elem = E>>(&self, ring: &C, other: &Poly<E>) -> Poly<E> {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<C: Coeffs<Elem = E>>(&self, ring: &C, c: &E) -> Poly<E> {
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), ring.mul(a, c)));
        Poly::from_terms(ring, self.nvars, terms)
    }

    pub fn mul_monomial<C: Coeffs<Elem = E>>(&self, ring: &C, m: &Monomial, c: &E) -> Poly<E> {
        let terms = self.terms.iter().map(|(u, a)| (u.mul(m), ring.mul(a, c)));
        Poly::from_terms(ring, self.nvars, terms)
    }

    pub fn mul<C: Coeffs<Elem = E>>(&self, ring: &C, other: &Poly<E>) -> Poly<E> {
        let mut out = Poly::zero(self.nvars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(ring, u.mul(v), ring.mul(a, b));
            }
        }
        out
    }

    pub fn pow<C: Coeffs<Elem = E>>(&self, ring: &C, e: u32) -> Poly<E> {
        let mut out = Poly::constant(ring, self.nvars, ring.one());
        for _ in 0..e {
            out = out.mul(ring, self);
        }
        out
    }

    /// The part of weighted degree exactly `d`.
    pub fn homogeneous_component(&self, d: u64, weights: &[u32]) -> Poly<E> {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weighted_degree(m, weights) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            nvars: self.nvars,
        }
    }

    /// The top-degree homogeneous part.
    pub fn leading_form(&self, weights: &[u32]) -> Poly<E> {
        match self.weighted_degree(weights) {
            Some(d) => self.homogeneous_component(d, weights),
            None => self.clone(),
        }
    }
}

/// An element of the free module `S^g`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeVec<E> {
    pub components: Vec<Poly<E>>,
}

impl<E: Clone + PartialEq> FreeVec<E> {
    pub fn new(components: Vec<Poly<E>>) -> Self {
        FreeVec { components }
    }

    pub fn zero(k: usize, gens: usize) -> Self {
        FreeVec {
            components: vec![Poly::zero(k); gens],
        }
    }

    /// The basis vector `e_i` scaled by a polynomial.
    pub fn basis(k: usize, gens: usize, i: usize, p: Poly<E>) -> Self {
        let mut v = FreeVec::zero(k, gens);
        v.components[i] = p;
        v
    }

    pub fn unit<C: Coeffs<Elem = E>>(ring: &C, k: usize, gens: usize, i: usize) -> Self {
        FreeVec::basis(k, gens, i, Poly::constant(ring, k, ring.one()))
    }

    pub fn gens(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add<C: Coeffs<Elem = E>>(&self, ring: &C, other: &FreeVec<E>) -> FreeVec<E> {
        FreeVec::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(ring, b))
                .collect(),
        )
    }

    pub fn scale_poly<C: Coeffs<Elem = E>>(&self, ring: &C, p: &Poly<E>) -> FreeVec<E> {
        FreeVec::new(self.components.iter().map(|a| a.mul(ring, p)).collect())
    }

    /// Largest weighted monomial degree among all components.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.components.iter().filter_map(|p| p.weighted_degree(weights)).max()
    }

    /// Largest graded degree `deg(x^a) + gen_degree(i)`.
    pub fn graded_degree(&self, weights: &[u32], gen_degrees: &[u64]) -> Option<u64> {
        self.components
            .iter()
            .zip(gen_degrees)
            .filter_map(|(p, &g)| p.weighted_degree(weights).map(|d| d + g))
            .max()
    }

    /// `Some(d)` if homogeneous of graded degree `d`; `Some(None)` for zero.
    pub fn homogeneous_degree(&self, weights: &[u32], gen_degrees: &[u64]) -> Option<Option<u64>> {
        let mut deg = None;
        for (p, &g) in self.components.iter().zip(gen_degrees) {
            match p.homogeneous_degree(weights)? {
                None => {}
                Some(d) => match deg {
                    None => deg = Some(d + g),
                    Some(e) if e == d + g => {}
                    Some(_) => return None,
                },
            }
        }
        Some(deg)
    }

    pub fn map_coeffs<F, T: Clone + PartialEq>(&self, mut f: F) -> FreeVec<T>
    where
        F: FnMut(&E) -> T,
    {
        FreeVec::new(self.components.iter().map(|p| p.map_coeffs(&mut f)).collect())
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Renders in the text syntax accepted by the problem-file parser, e.g. `3*x1^2*x2 - x3 + 5`.
impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = TermOrder::standard(self.nvars);
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else {
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{}*", a.numer())?;
                    } else {
                        write!(f, "({})*", fmt_rational(&a))?;
                    }
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::ring::BaseRing;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(weighted_degree(&mono(&[2, 1]), &[1, 1]), 3);
        assert_eq!(weighted_degree(&mono(&[2, 1]), &[2, 3]), 7);
        assert_eq!(weighted_degree(&mono(&[0, 0]), &[2, 3]), 0);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(2, 2, &[1, 1]).len(), 6);
        assert_eq!(
            monomials_up_to(1, 5, &[2]),
            vec![mono(&[0]), mono(&[1]), mono(&[2])]
        );
        assert_eq!(monomials_up_to(3, 0, &[1, 1, 1]), vec![mono(&[0, 0, 0])]);
        for k in 1..=5usize {
            for n in 0..=15u64 {
                let expect = crate::arith::binomial(n + k as u64, k as u64);
                assert_eq!(monomials_up_to(k, n, &vec![1; k]).len(), usize::try_from(expect).unwrap());
            }
        }
    }

    #[test]
    fn poly_arith() {
        let z = BaseRing::Integers;
        let x = Poly::var(&z, 1, 0);
        let one = Poly::constant(&z, 1, int(1));
        let s = x.add(&z, &one);
        let sq = s.mul(&z, &s);
        assert_eq!(sq.to_string(), "x1^2 + 2*x1 + 1");
        assert_eq!(sq.homogeneous_component(2, &[1]).to_string(), "x1^2");
        let f2 = BaseRing::zmod(2);
        let s2 = Poly::var(&f2, 1, 0).add(&f2, &Poly::constant(&f2, 1, int(1)));
        assert_eq!(s2.mul(&f2, &s2).to_string(), "x1^2 + 1");
    }

    #[test]
    fn display_shapes() {
        let q = BaseRing::Rationals;
        let p = Poly::from_terms(
            &q,
            3,
            [
                (mono(&[2, 1, 0]), int(3)),
                (mono(&[0, 0, 1]), int(-1)),
                (mono(&[0, 0, 0]), int(5)),
            ],
        );
        assert_eq!(p.to_string(), "3*x1^2*x2 - x3 + 5");
    }

    #[test]
    fn grevlex_small_cases() {
        let o = TermOrder::standard(3);
        // x1*x3 < x2^2 in grevlex
        assert_eq!(o.cmp_mono(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp_mono(&mono(&[1, 0, 0]), &mono(&[0, 1, 0])), Ordering::Greater);
        let a = Term::new(mono(&[1, 0, 0]), 0);
        let b = Term::new(mono(&[1, 0, 0]), 1);
        assert_eq!(o.cmp_term(&a, &b), Ordering::Greater);
    }

    fn arb_mono(k: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, k).prop_map(Monomial)
    }

    proptest! {
        #[test]
        fn order_is_multiplicative_and_graded(
            u in arb_mono(3), v in arb_mono(3), w in arb_mono(3),
            weights in proptest::collection::vec(1u32..4, 3),
        ) {
            for o in [TermOrder::standard(3), TermOrder::new(weights)] {
                if o.cmp_mono(&u, &v) == Ordering::Less {
                    prop_assert_eq!(o.cmp_mono(&u.mul(&w), &v.mul(&w)), Ordering::Less);
                }
                if o.degree(&u) < o.degree(&v) {
                    prop_assert_eq!(o.cmp_mono(&u, &v), Ordering::Less);
                }
                prop_assert_eq!(o.cmp_mono(&u, &v) == Ordering::Equal, u == v);
            }
        }
    }
}
