//! Finitely presented modules over `S = R[x_1, …, x_k]`, starting submodules,
//! and builders for the standard examples.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::poly::{FreeVec, Monomial, Poly};
use crate::ring::BaseRing;

pub use crate::ring::LengthSpec;

/// Base ring, number of variables and variable weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub base: BaseRing,
    pub k: usize,
    pub weights: Vec<u32>,
}

impl RingSpec {
    pub fn new(base: BaseRing, k: usize) -> Self {
        RingSpec {
            base,
            k,
            weights: vec![1; k],
        }
    }

    pub fn weighted(base: BaseRing, weights: Vec<u32>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidInput("variable weights must be positive".into()));
        }
        Ok(RingSpec {
            base,
            k: weights.len(),
            weights,
        })
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn var(&self, i: usize) -> Poly<Rational> {
        Poly::var(&self.base, self.k, i)
    }

    pub fn constant(&self, c: i64) -> Poly<Rational> {
        Poly::constant(&self.base, self.k, int(c))
    }

    pub fn monomial(&self, exps: &[u32], c: i64) -> Poly<Rational> {
        Poly::monomial(&self.base, Monomial(exps.to_vec()), int(c))
    }

    /// Map a polynomial onto this ring's canonical coefficients.
    pub fn canonicalize(&self, p: &Poly<Rational>) -> Result<Poly<Rational>> {
        if p.nvars() != self.k {
            return Err(Error::Shape(format!(
                "polynomial in {} variables over a ring with {}",
                p.nvars(),
                self.k
            )));
        }
        let mut out = Poly::zero(self.k);
        for (m, c) in p.terms() {
            let c = self.base.canonical(c).ok_or_else(|| {
                Error::InvalidInput(format!("coefficient {c} does not live in {}", self.base))
            })?;
            out.add_term(&self.base, m.clone(), c);
        }
        Ok(out)
    }
}

/// A module `S^g / N` with `N` generated by `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: RingSpec,
    gens: usize,
    gen_degrees: Option<Vec<u64>>,
    relations: Vec<FreeVec<Rational>>,
}

impl Presentation {
    /// Validated constructor. With `gen_degrees`, every relation must be homogeneous.
    pub fn new(
        ring: RingSpec,
        gens: usize,
        gen_degrees: Option<Vec<u64>>,
        relations: Vec<FreeVec<Rational>>,
    ) -> Result<Self> {
        if let Some(d) = &gen_degrees {
            if d.len() != gens {
                return Err(Error::Shape(format!(
                    "{} generator degrees for {gens} generators",
                    d.len()
                )));
            }
        }
        let mut rels = Vec::with_capacity(relations.len());
        for (i, r) in relations.iter().enumerate() {
            if r.gens() != gens {
                return Err(Error::Shape(format!(
                    "relation {i} has {} components, expected {gens}",
                    r.gens()
                )));
            }
            let comps = r
                .components
                .iter()
                .map(|p| ring.canonicalize(p))
                .collect::<Result<Vec<_>>>()?;
            let r = FreeVec::new(comps);
            if let Some(d) = &gen_degrees {
                if r.homogeneous_degree(&ring.weights, d).is_none() {
                    return Err(Error::Inhomogeneous(i));
                }
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        Ok(Presentation {
            ring,
            gens,
            gen_degrees,
            relations: rels,
        })
    }

    pub fn free(ring: RingSpec, gens: usize) -> Self {
        Presentation {
            ring,
            gens,
            gen_degrees: Some(vec![0; gens]),
            relations: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn base(&self) -> &BaseRing {
        &self.ring.base
    }

    pub fn k(&self) -> usize {
        self.ring.k
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn gen_degrees(&self) -> Option<&[u64]> {
        self.gen_degrees.as_deref()
    }

    pub fn relations(&self) -> &[FreeVec<Rational>] {
        &self.relations
    }

    /// Same module without the grading flag.
    pub fn ungraded(&self) -> Presentation {
        Presentation {
            gen_degrees: None,
            ..self.clone()
        }
    }

    /// Unit vector `e_i`.
    pub fn unit(&self, i: usize) -> FreeVec<Rational> {
        FreeVec::unit(&self.ring.base, self.k(), self.gens, i)
    }

    /// `p · e_i`.
    pub fn vector(&self, i: usize, p: Poly<Rational>) -> FreeVec<Rational> {
        FreeVec::basis(self.k(), self.gens, i, p)
    }

    /// All generators as a starting submodule.
    pub fn all_generators(&self) -> SubmoduleGens {
        SubmoduleGens::new((0..self.gens).map(|i| self.unit(i)).collect())
    }

    /// The quotient by additional relations, keeping the grading only if
    /// they are homogeneous.
    pub fn with_relations(&self, extra: &[FreeVec<Rational>]) -> Result<Presentation> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        match Presentation::new(self.ring.clone(), self.gens, self.gen_degrees.clone(), rels.clone()) {
            Err(Error::Inhomogeneous(_)) => Presentation::new(self.ring.clone(), self.gens, None, rels),
            other => other,
        }
    }

    /// Canonicalize an element given as a vector of polynomials.
    pub fn element(&self, comps: Vec<Poly<Rational>>) -> Result<FreeVec<Rational>> {
        if comps.len() != self.gens {
            return Err(Error::Shape(format!(
                "element has {} components, expected {}",
                comps.len(),
                self.gens
            )));
        }
        let comps = comps
            .iter()
            .map(|p| self.ring.canonicalize(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeVec::new(comps))
    }
}

/// Generators of the starting R-submodule `V₀`.
///
/// `plus_multiple = Some(m)` describes `R·elements + m·M`, the infinitely
/// R-generated family `Z + mS` when `elements = {1}` in `M = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleGens {
    pub elements: Vec<FreeVec<Rational>>,
    pub plus_multiple: Option<BigUint>,
}

impl SubmoduleGens {
    pub fn new(elements: Vec<FreeVec<Rational>>) -> Self {
        SubmoduleGens {
            elements,
            plus_multiple: None,
        }
    }

    /// `Z + m·S` inside a one-generator module.
    pub fn integers_plus_multiple(m: &Presentation, n: u64) -> Self {
        SubmoduleGens {
            elements: vec![m.unit(0)],
            plus_multiple: Some(BigUint::from(n)),
        }
    }

    pub fn check(&self, m: &Presentation) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidInput("starting submodule needs a generator".into()));
        }
        if let Some(e) = self.elements.iter().find(|e| e.gens() != m.gens()) {
            return Err(Error::Shape(format!(
                "element with {} components in a module with {} generators",
                e.gens(),
                m.gens()
            )));
        }
        Ok(())
    }

    /// Largest weighted degree occurring in the elements.
    pub fn max_degree(&self, weights: &[u32]) -> u64 {
        self.elements
            .iter()
            .filter_map(|e| e.weighted_degree(weights))
            .max()
            .unwrap_or(0)
    }
}

/// `S / I` as a one-generator module; graded when `I` is homogeneous.
pub fn from_ideal_quotient(ring: RingSpec, ideal_gens: &[Poly<Rational>]) -> Result<Presentation> {
    let homogeneous = ideal_gens
        .iter()
        .all(|p| p.homogeneous_degree(&ring.weights).is_some());
    let rels = ideal_gens
        .iter()
        .map(|p| FreeVec::new(vec![p.clone()]))
        .collect();
    let degrees = homogeneous.then(|| vec![0]);
    Presentation::new(ring, 1, degrees, rels)
}

/// `R[z, z⁻¹]` as an `R[x₁, x₂]`-module via `x₁ ↦ z^a`, `x₂ ↦ z^(-b)`.
///
/// Generators are `z^j` for `-(b-1) <= j <= a-1`. With `b = 0` this is `R[z]`
/// over `R[x₁]`, acting by `z^a`.
pub fn laurent_presentation(base: BaseRing, a: u32, b: u32) -> Result<Presentation> {
    if a == 0 {
        return Err(Error::InvalidInput("the positive exponent must be at least 1".into()));
    }
    if b == 0 {
        let ring = RingSpec::new(base, 1);
        // free on z^j, 0 <= j < a
        return Ok(Presentation::free(ring, a as usize));
    }
    let ring = RingSpec::new(base.clone(), 2);
    let lo = -(b as i64 - 1);
    let hi = a as i64 - 1;
    let gens = (hi - lo + 1) as usize;
    let idx = |j: i64| (j - lo) as usize;
    let x1 = ring.var(0);
    let x2 = ring.var(1);
    let one = ring.constant(1);
    let mut rels = Vec::new();
    let mk = |terms: Vec<(usize, Poly<Rational>)>| {
        let mut v = FreeVec::zero(2, gens);
        for (i, p) in terms {
            v.components[i] = v.components[i].add(&base, &p);
        }
        v
    };
    for j in lo..=hi {
        if j + (a as i64) <= hi {
            rels.push(mk(vec![(idx(j), x1.clone()), (idx(j + a as i64), one.neg(&base))]));
        }
        if j - (b as i64) >= lo {
            rels.push(mk(vec![(idx(j), x2.clone()), (idx(j - b as i64), one.neg(&base))]));
        }
    }
    let g = (a as u64).gcd(&(b as u64));
    let cycle = ring
        .monomial(&[(b as u64 / g) as u32, (a as u64 / g) as u32], 1)
        .sub(&base, &one);
    for j in lo..=hi {
        rels.push(mk(vec![(idx(j), cycle.clone())]));
    }
    Presentation::new(ring, gens, None, rels)
}

/// `M / mM` for a presentation over the integers.
pub fn quotient_mod_integer(m: &Presentation, n: &BigUint) -> Result<Presentation> {
    if m.base() != &BaseRing::Integers {
        return Err(Error::WrongBase(m.base().to_string()));
    }
    if n.is_zero() {
        return Ok(m.clone());
    }
    let c = Rational::from_integer(n.clone().into());
    let extra: Vec<_> = (0..m.gens())
        .map(|i| m.vector(i, Poly::constant(&BaseRing::Integers, m.k(), c.clone())))
        .collect();
    m.with_relations(&extra)
}

/// `R[z]` as an `R[x₁, x₂]`-module via `x₁ ↦ z²`, `x₂ ↦ z³`, generated by `{1, z}`.
pub fn two_generator_algebra_example(base: BaseRing) -> Presentation {
    let ring = RingSpec::new(base.clone(), 2);
    let x1 = ring.var(0);
    let x2 = ring.var(1);
    let x1sq = x1.mul(&base, &x1);
    let r1 = FreeVec::new(vec![x2.clone(), x1.neg(&base)]);
    let r2 = FreeVec::new(vec![x1sq.neg(&base), x2]);
    Presentation::new(ring, 2, None, vec![r1, r2]).expect("well-formed example")
}

/// `R[z]` over `R[x₁]` with `x₁ ↦ z`: the free module of rank one.
pub fn polynomial_ring_over_itself(base: BaseRing) -> Presentation {
    Presentation::free(RingSpec::new(base, 1), 1)
}
