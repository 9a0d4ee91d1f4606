//! Strong Groebner bases of submodules of `S^g` over the integers or a field.
//!
//! Vectors are sparse lists of `(TermKey, coefficient)` in decreasing term
//! order. Over the integers both S-polynomials and gcd-polynomials are
//! processed, which yields a strong basis: every leading term of the submodule
//! is divisible, coefficient included, by a basis leading term.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{weighted_degree, FreeVec, Monomial, Poly, Term, TermOrder};
use crate::ring::{RatField, Ring};

/// A term `x^a e_pos` encoded so that the derived order is the weighted
/// grevlex, term-over-position order: `[deg, -a_k, …, -a_1, -pos]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TermKey(Box<[i64]>);

impl TermKey {
    pub fn new(mono: &Monomial, pos: usize, weights: &[u32]) -> Self {
        let k = mono.nvars();
        let mut v = Vec::with_capacity(k + 2);
        v.push(weighted_degree(mono, weights) as i64);
        v.extend(mono.0.iter().rev().map(|&e| -(e as i64)));
        v.push(-(pos as i64));
        TermKey(v.into_boxed_slice())
    }

    pub fn from_term(t: &Term, weights: &[u32]) -> Self {
        TermKey::new(&t.mono, t.pos, weights)
    }

    pub fn nvars(&self) -> usize {
        self.0.len() - 2
    }

    pub fn degree(&self) -> u64 {
        self.0[0] as u64
    }

    pub fn exp(&self, i: usize) -> u32 {
        (-self.0[self.nvars() - i]) as u32
    }

    pub fn pos(&self) -> usize {
        (-self.0[self.0.len() - 1]) as usize
    }

    pub fn monomial(&self) -> Monomial {
        Monomial((0..self.nvars()).map(|i| self.exp(i)).collect())
    }

    pub fn term(&self) -> Term {
        Term::new(self.monomial(), self.pos())
    }

    pub fn mul(&self, m: &Monomial, weights: &[u32]) -> TermKey {
        let k = self.nvars();
        let mut v = self.0.clone();
        v[0] += weighted_degree(m, weights) as i64;
        for i in 0..k {
            v[k - i] -= m.0[i] as i64;
        }
        TermKey(v)
    }

    /// Same position and componentwise smaller exponents.
    pub fn divides(&self, other: &TermKey) -> bool {
        let n = self.0.len();
        self.0[n - 1] == other.0[n - 1] && (1..n - 1).all(|i| self.0[i] >= other.0[i])
    }

    /// The monomial `other / self`.
    pub fn quotient(&self, other: &TermKey) -> Monomial {
        let k = self.nvars();
        Monomial((0..k).map(|i| other.exp(i) - self.exp(i)).collect())
    }

    pub fn lcm(&self, other: &TermKey, weights: &[u32]) -> TermKey {
        debug_assert_eq!(self.pos(), other.pos());
        let m = self.monomial().lcm(&other.monomial());
        TermKey::new(&m, self.pos(), weights)
    }
}

/// Sparse module vector in decreasing term order.
pub type MVec<E> = Vec<(TermKey, E)>;

/// `a + c · x^m · b`.
pub fn add_scaled<R: Ring>(
    ring: &R,
    a: &MVec<R::Elem>,
    c: &R::Elem,
    m: &Monomial,
    b: &MVec<R::Elem>,
    weights: &[u32],
) -> MVec<R::Elem> {
    if ring.is_zero(c) {
        return a.clone();
    }
    let shifted = b.iter().map(|(t, e)| (t.mul(m, weights), ring.mul(c, e)));
    merge(ring, a.iter().cloned(), shifted)
}

fn merge<R: Ring>(
    ring: &R,
    a: impl Iterator<Item = (TermKey, R::Elem)>,
    b: impl Iterator<Item = (TermKey, R::Elem)>,
) -> MVec<R::Elem> {
    let mut out = Vec::new();
    let mut a = a.peekable();
    let mut b = b.peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => x.0.cmp(&y.0),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => {
                let (t, e) = b.next().unwrap();
                if !ring.is_zero(&e) {
                    out.push((t, e));
                }
            }
            Ordering::Equal => {
                let (t, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = ring.add(&x, &y);
                if !ring.is_zero(&s) {
                    out.push((t, s));
                }
            }
        }
    }
    out
}

pub fn scale<R: Ring>(ring: &R, v: &MVec<R::Elem>, c: &R::Elem) -> MVec<R::Elem> {
    v.iter()
        .map(|(t, e)| (t.clone(), ring.mul(c, e)))
        .filter(|(_, e)| !ring.is_zero(e))
        .collect()
}

/// Convert a presentation vector (rational coefficients) into engine form.
pub fn to_mvec<R: Ring>(ring: &R, v: &FreeVec<Rational>, weights: &[u32]) -> Result<MVec<R::Elem>> {
    let mut out = Vec::new();
    for (pos, p) in v.components.iter().enumerate() {
        for (m, c) in p.terms() {
            let e = ring.from_rational(c).ok_or_else(|| {
                Error::InvalidInput(format!("coefficient {c} is not in {}", ring.name()))
            })?;
            if !ring.is_zero(&e) {
                out.push((TermKey::new(m, pos, weights), e));
            }
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

pub fn to_freevec<R: Ring>(ring: &R, v: &MVec<R::Elem>, k: usize, gens: usize) -> FreeVec<Rational> {
    let mut comps = vec![Poly::<Rational>::zero(k); gens];
    for (t, e) in v {
        let c = ring.to_rational(e);
        comps[t.pos()].add_term(&RatField, t.monomial(), c);
    }
    FreeVec::new(comps)
}

#[derive(Clone, Debug)]
pub struct StrongGB<R: Ring> {
    ring: R,
    order: TermOrder,
    k: usize,
    gens: usize,
    elems: Vec<MVec<R::Elem>>,
}

/// Default limit on processed critical pairs.
pub const DEFAULT_GB_BUDGET: usize = 200_000;

/// Strong Groebner basis of the submodule generated by `rels`.
pub fn buchberger_strong<R: Ring>(
    ring: &R,
    order: &TermOrder,
    k: usize,
    gens: usize,
    rels: &[MVec<R::Elem>],
    budget: usize,
) -> Result<StrongGB<R>> {
    let w = order.weights().to_vec();
    let mut basis: Vec<MVec<R::Elem>> = Vec::new();
    // pairs keyed by (lcm, i, j) so the smallest lcm is processed first
    let mut pairs: BTreeSet<(TermKey, usize, usize)> = BTreeSet::new();
    let mut queue: Vec<MVec<R::Elem>> = rels.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut steps = 0usize;

    let add = |basis: &mut Vec<MVec<R::Elem>>,
               pairs: &mut BTreeSet<(TermKey, usize, usize)>,
               h: MVec<R::Elem>| {
        let j = basis.len();
        let lt = h[0].0.clone();
        for (i, g) in basis.iter().enumerate() {
            if g[0].0.pos() == lt.pos() {
                pairs.insert((g[0].0.lcm(&lt, &w), i, j));
            }
        }
        basis.push(h);
    };

    for r in queue.drain(..) {
        let h = top_reduce(ring, &basis, r, &w);
        if !h.is_empty() {
            add(&mut basis, &mut pairs, normalize(ring, h));
        }
    }

    while let Some((lcm, i, j)) = pairs.pop_first() {
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let (f, g) = (&basis[i], &basis[j]);
        let (a, b) = (&f[0].1, &g[0].1);
        let mf = f[0].0.quotient(&lcm);
        let mg = g[0].0.quotient(&lcm);
        let mut fresh = Vec::new();
        // S-polynomial: cancel leading terms at lcm(a, b)
        let (gab, s, t) = ring.gcdext(a, b);
        let ca = ring.exact_div(b, &gab);
        let cb = ring.exact_div(a, &gab);
        let spoly = add_scaled(
            ring,
            &add_scaled(ring, &Vec::new(), &ca, &mf, f, &w),
            &ring.neg(&cb),
            &mg,
            g,
            &w,
        );
        fresh.push(spoly);
        if !ring.is_field() && !ring.divides(a, b) && !ring.divides(b, a) {
            let gpoly = add_scaled(
                ring,
                &add_scaled(ring, &Vec::new(), &s, &mf, f, &w),
                &t,
                &mg,
                g,
                &w,
            );
            fresh.push(gpoly);
        }
        for p in fresh {
            let h = top_reduce(ring, &basis, p, &w);
            if !h.is_empty() {
                add(&mut basis, &mut pairs, normalize(ring, h));
            }
        }
    }

    let mut gb = StrongGB {
        ring: ring.clone(),
        order: order.clone(),
        k,
        gens,
        elems: basis,
    };
    gb.interreduce();
    Ok(gb)
}

fn normalize<R: Ring>(ring: &R, v: MVec<R::Elem>) -> MVec<R::Elem> {
    let u = ring.normalizing_unit(&v[0].1);
    scale(ring, &v, &u)
}

/// Strong top reduction: cancel the leading term while some basis leading
/// term divides it, coefficient included.
fn top_reduce<R: Ring>(
    ring: &R,
    basis: &[MVec<R::Elem>],
    mut f: MVec<R::Elem>,
    w: &[u32],
) -> MVec<R::Elem> {
    'outer: while let Some((lt, lc)) = f.first().cloned() {
        for g in basis {
            let (gt, gc) = &g[0];
            if gt.divides(&lt) && ring.divides(gc, &lc) {
                let q = ring.exact_div(&lc, gc);
                f = add_scaled(ring, &f, &ring.neg(&q), &gt.quotient(&lt), g, w);
                continue 'outer;
            }
        }
        break;
    }
    f
}

impl<R: Ring> StrongGB<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn elements(&self) -> &[MVec<R::Elem>] {
        &self.elems
    }

    /// Basis element with the smallest leading coefficient among those whose
    /// leading term divides `t`.
    pub fn reducer(&self, t: &TermKey) -> Option<&MVec<R::Elem>> {
        let mut best: Option<&MVec<R::Elem>> = None;
        for g in &self.elems {
            if !g[0].0.divides(t) {
                continue;
            }
            best = match best {
                None => Some(g),
                Some(b) if self.ring.divides(&g[0].1, &b[0].1) && !self.ring.divides(&b[0].1, &g[0].1) => Some(g),
                keep => keep,
            };
            if self.ring.is_field() {
                break;
            }
        }
        best
    }

    /// Staircase modulus `c(β)`: `None` when no leading term divides `β` (a free direction).
    pub fn staircase(&self, t: &TermKey) -> Option<R::Elem> {
        self.reducer(t).map(|g| g[0].1.clone())
    }

    /// Fully reduced canonical representative.
    pub fn normal_form(&self, f: &MVec<R::Elem>) -> MVec<R::Elem> {
        let w = self.order.weights();
        let mut rest = f.clone();
        let mut out: MVec<R::Elem> = Vec::new();
        while let Some((t, a)) = rest.first().cloned() {
            match self.reducer(&t) {
                None => {
                    out.push(rest.remove(0));
                }
                Some(g) => {
                    let (q, r) = self.ring.div_rem(&a, &g[0].1);
                    rest = add_scaled(&self.ring, &rest, &self.ring.neg(&q), &g[0].0.quotient(&t), g, w);
                    if !self.ring.is_zero(&r) {
                        debug_assert_eq!(rest.first().map(|x| &x.0), Some(&t));
                        out.push(rest.remove(0));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &MVec<R::Elem>) -> bool {
        self.normal_form(f).is_empty()
    }

    /// Drop redundant elements, then reduce tails.
    fn interreduce(&mut self) {
        let mut keep: Vec<MVec<R::Elem>> = Vec::new();
        let n = self.elems.len();
        for i in 0..n {
            let (ti, ci) = &self.elems[i][0];
            let redundant = (0..n).any(|j| {
                if i == j {
                    return false;
                }
                let (tj, cj) = &self.elems[j][0];
                let divides = tj.divides(ti) && self.ring.divides(cj, ci);
                let equal = tj == ti && self.ring.divides(ci, cj);
                // equal leading terms: keep the first occurrence
                divides && !(equal && i < j)
            });
            if !redundant {
                keep.push(self.elems[i].clone());
            }
        }
        keep.sort_by(|a, b| a[0].0.cmp(&b[0].0));
        self.elems = keep;
        let snapshot = self.clone();
        for g in self.elems.iter_mut() {
            let head = g[0].clone();
            let tail: MVec<R::Elem> = g[1..].to_vec();
            let mut reduced = vec![head];
            reduced.extend(snapshot.normal_form(&tail));
            *g = reduced;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{IntRing, PrimeField};
    use num_bigint::BigInt;

    fn zpoly(terms: &[(i64, u32)]) -> MVec<BigInt> {
        let w = [1];
        let mut v: MVec<BigInt> = terms
            .iter()
            .map(|&(c, e)| (TermKey::new(&Monomial(vec![e]), 0, &w), BigInt::from(c)))
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    fn gb_z(rels: &[MVec<BigInt>]) -> StrongGB<IntRing> {
        buchberger_strong(&IntRing, &TermOrder::standard(1), 1, 1, rels, 10_000).unwrap()
    }

    #[test]
    fn key_order_matches_term_order() {
        let w = [1u32, 2, 1];
        let o = TermOrder::new(w.to_vec());
        let ms = crate::poly::monomials_up_to(3, 4, &w);
        for a in &ms {
            for b in &ms {
                for (p, q) in [(0, 0), (0, 1), (1, 0)] {
                    let ta = Term::new(a.clone(), p);
                    let tb = Term::new(b.clone(), q);
                    assert_eq!(
                        TermKey::from_term(&ta, &w).cmp(&TermKey::from_term(&tb, &w)),
                        o.cmp_term(&ta, &tb)
                    );
                }
            }
        }
        let t = TermKey::new(&Monomial(vec![1, 0, 2]), 1, &w);
        assert_eq!(t.monomial(), Monomial(vec![1, 0, 2]));
        assert_eq!(t.pos(), 1);
    }

    #[test]
    fn residue_mod_three() {
        let gb = gb_z(&[zpoly(&[(3, 0)])]);
        assert_eq!(gb.normal_form(&zpoly(&[(5, 0)])), zpoly(&[(2, 0)]));
        assert!(gb.contains(&zpoly(&[(3, 0), (6, 2)])));
    }

    #[test]
    fn staircase_of_x2_2x() {
        let gb = gb_z(&[zpoly(&[(1, 2)]), zpoly(&[(2, 1)])]);
        let key = |e| TermKey::new(&Monomial(vec![e]), 0, &[1]);
        assert_eq!(gb.staircase(&key(0)), None);
        assert_eq!(gb.staircase(&key(1)), Some(BigInt::from(2)));
        assert_eq!(gb.staircase(&key(3)), Some(BigInt::from(1)));
        assert_eq!(gb.normal_form(&zpoly(&[(3, 1)])), zpoly(&[(1, 1)]));
    }

    #[test]
    fn two_x_minus_one() {
        // in Z[x]/(2x-1) exactly the elements 2^j x^j ... stay distinct; 2x ≡ 1
        let gb = gb_z(&[zpoly(&[(2, 1), (-1, 0)])]);
        assert!(gb.contains(&zpoly(&[(4, 2), (-1, 0)])));
        assert!(!gb.contains(&zpoly(&[(1, 0)])));
        assert_eq!(gb.normal_form(&zpoly(&[(2, 1)])), zpoly(&[(1, 0)]));
        assert_eq!(gb.normal_form(&zpoly(&[(3, 1)])), zpoly(&[(1, 1), (1, 0)]));
    }

    #[test]
    fn gcd_polynomials_are_needed() {
        // (2x, 3x) generate x; a weak basis would miss it
        let gb = gb_z(&[zpoly(&[(2, 1)]), zpoly(&[(3, 1)])]);
        assert!(gb.contains(&zpoly(&[(1, 1)])));
        assert_eq!(gb.elements().len(), 1);
    }

    #[test]
    fn field_basis_of_module() {
        // over Q[x,y]: relations x e1 - y e2, y e1 in S^2
        let w = [1u32, 1];
        let q = RatField;
        let one = Rational::from_integer(1.into());
        let m = |e: [u32; 2], p: usize, c: &Rational| (TermKey::new(&Monomial(e.to_vec()), p, &w), c.clone());
        let mut r1 = vec![m([1, 0], 0, &one), m([0, 1], 1, &-one.clone())];
        r1.sort_by(|a, b| b.0.cmp(&a.0));
        let r2 = vec![m([0, 1], 0, &one)];
        let gb = buchberger_strong(&q, &TermOrder::standard(2), 2, 2, &[r1.clone(), r2], 1000).unwrap();
        assert!(gb.contains(&r1));
        // y * r1 - x * r2 = -y^2 e2
        assert!(gb.contains(&vec![m([0, 2], 1, &one)]));
        assert!(!gb.contains(&vec![m([0, 1], 1, &one)]));
    }

    #[test]
    fn prime_field_reduction() {
        let f = PrimeField::new(2);
        let w = [1u32];
        let p = |c: &[(u64, u32)]| {
            let mut v: MVec<u64> = c.iter().map(|&(a, e)| (TermKey::new(&Monomial(vec![e]), 0, &w), a)).collect();
            v.sort_by(|a, b| b.0.cmp(&a.0));
            v
        };
        let gb = buchberger_strong(&f, &TermOrder::standard(1), 1, 1, &[p(&[(1, 2), (1, 0)])], 100).unwrap();
        // x^2 + 1 = (x+1)^2 over F2
        assert!(gb.contains(&p(&[(1, 4), (1, 0)])));
        assert_eq!(gb.normal_form(&p(&[(1, 3)])), p(&[(1, 1)]));
    }
}
