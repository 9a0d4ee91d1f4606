//! Coefficient rings.
//!
//! [`Coeffs`] is plain commutative arithmetic; [`Ring`] adds the Euclidean
//! structure (canonical remainders, extended gcd) and the length of cyclic
//! subquotients that the echelon and Groebner layers rely on.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{lv_of_group_order, LengthValue, Rational};
use crate::error::{Error, Result};

/// Which length function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthSpec {
    /// `dim_K` over a field.
    #[serde(rename = "dim")]
    Dimension,
    /// Free rank over the integers (or dimension over the rationals).
    Rank,
    /// Logarithm of the cardinality over the integers or `Z/n`.
    LogCard,
}

impl fmt::Display for LengthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthSpec::Dimension => "dim",
            LengthSpec::Rank => "rank",
            LengthSpec::LogCard => "logcard",
        })
    }
}

pub trait Coeffs: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational number; `None` if the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    /// Canonical rational lift (integers in `[0, n)` for residue rings).
    fn to_rational(&self, a: &Self::Elem) -> Rational;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
            .expect("integers embed in every supported ring")
    }
}

pub trait Ring: Coeffs {
    fn is_field(&self) -> bool;

    /// `a = q*b + r` with `r` the canonical remainder (`[0, |b|)` over the
    /// integers, zero over a field). `b` must be nonzero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// `(g, s, t)` with `g = s*a + t*b` the canonical generator of `(a, b)`.
    fn gcdext(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);

    /// A unit `u` such that `u*a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Length of `(a)/(b)` for nested ideals `(b) ⊆ (a)`; `None` stands for the zero ideal.
    fn ideal_quotient_length(
        &self,
        a: Option<&Self::Elem>,
        b: Option<&Self::Elem>,
        spec: LengthSpec,
    ) -> Result<LengthValue>;

    /// Human-readable base name, for diagnostics.
    fn name(&self) -> String;

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    /// `b / a`, assuming `a` divides `b`.
    fn exact_div(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        let (q, r) = self.div_rem(b, a);
        debug_assert!(self.is_zero(&r));
        q
    }

    /// Canonical associate. Over a field: one; over ℤ: the absolute value.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.normalizing_unit(a), a)
    }

    /// Length of the ring itself.
    fn unit_length(&self, spec: LengthSpec) -> Result<LengthValue> {
        let one = self.one();
        self.ideal_quotient_length(Some(&one), None, spec)
    }
}

/// Evaluate `$body` with `$r` bound to the engine ring for a [`BaseRing`].
/// Residue rings `Z/n` are computed over the integers with `n·e_i` adjoined.
#[macro_export]
macro_rules! with_ring {
    ($base:expr, |$r:ident| $body:expr) => {
        match $base {
            $crate::ring::BaseRing::Integers | $crate::ring::BaseRing::IntegersModN(_) => {
                let $r = $crate::ring::IntRing;
                $body
            }
            $crate::ring::BaseRing::PrimeField(p) => {
                let $r = $crate::ring::PrimeField::new(*p);
                $body
            }
            $crate::ring::BaseRing::Rationals => {
                let $r = $crate::ring::RatField;
                $body
            }
        }
    };
}

fn unsupported(spec: LengthSpec, base: String) -> Error {
    Error::UnsupportedCombination {
        length: spec.to_string(),
        base,
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntRing;

impl Coeffs for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_rational(&self, q: &Rational) -> Option<BigInt> {
        q.is_integer().then(|| q.numer().clone())
    }
    fn to_rational(&self, a: &BigInt) -> Rational {
        Rational::from_integer(a.clone())
    }
}

impl Ring for IntRing {
    fn is_field(&self) -> bool {
        false
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let m = b.abs();
        let r = a.mod_floor(&m);
        let q = (a - &r) / b;
        (q, r)
    }

    fn gcdext(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
        let e = a.extended_gcd(b);
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        // Prefer the trivial combination when one side already generates.
        if !a.is_zero() && &a.abs() == &g {
            return (g, a.signum(), BigInt::zero());
        }
        if !b.is_zero() && &b.abs() == &g {
            return (g, BigInt::zero(), b.signum());
        }
        (g, s, t)
    }

    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn ideal_quotient_length(
        &self,
        a: Option<&BigInt>,
        b: Option<&BigInt>,
        spec: LengthSpec,
    ) -> Result<LengthValue> {
        let a = a.filter(|x| !x.is_zero());
        let b = b.filter(|x| !x.is_zero());
        match spec {
            LengthSpec::LogCard => Ok(match (a, b) {
                (None, _) => LengthValue::zero(),
                (Some(_), None) => LengthValue::Infinite,
                (Some(a), Some(b)) => {
                    let q = (b / a).abs();
                    lv_of_group_order(q.magnitude())
                }
            }),
            LengthSpec::Rank => Ok(match (a, b) {
                (Some(_), None) => LengthValue::from_int(1),
                _ => LengthValue::zero(),
            }),
            LengthSpec::Dimension => Err(unsupported(spec, self.name())),
        }
    }

    fn name(&self) -> String {
        "Z".into()
    }
}

/// The prime field `F_p`, `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "field characteristic out of range");
        PrimeField { p }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let e = (a as i128).extended_gcd(&(self.p as i128));
        e.x.rem_euclid(self.p as i128) as u64
    }
}

impl Coeffs for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = q.numer().mod_floor(&p).to_u64()?;
        let d = q.denom().mod_floor(&p).to_u64()?;
        (d != 0).then(|| self.mul(&n, &self.inv(d)))
    }
    fn to_rational(&self, a: &u64) -> Rational {
        Rational::from_integer(BigInt::from(*a))
    }
}

impl Ring for PrimeField {
    fn is_field(&self) -> bool {
        true
    }

    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.inv(*b)), 0)
    }

    fn gcdext(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        if *a != 0 {
            (1, self.inv(*a), 0)
        } else if *b != 0 {
            (1, 0, self.inv(*b))
        } else {
            (0, 0, 0)
        }
    }

    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.inv(*a)
        }
    }

    fn ideal_quotient_length(
        &self,
        a: Option<&u64>,
        b: Option<&u64>,
        spec: LengthSpec,
    ) -> Result<LengthValue> {
        field_quotient_length(a.is_some_and(|x| *x != 0), b.is_some_and(|x| *x != 0), spec, false)
            .ok_or_else(|| unsupported(spec, self.name()))
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

fn field_quotient_length(a: bool, b: bool, spec: LengthSpec, rank_ok: bool) -> Option<LengthValue> {
    match spec {
        LengthSpec::Dimension => {}
        LengthSpec::Rank if rank_ok => {}
        _ => return None,
    }
    Some(if a && !b {
        LengthValue::from_int(1)
    } else {
        LengthValue::zero()
    })
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RatField;

impl Coeffs for RatField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_rational(&self, q: &Rational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> Rational {
        a.clone()
    }
}

impl Ring for RatField {
    fn is_field(&self) -> bool {
        true
    }

    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }

    fn gcdext(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> (BigRational, BigRational, BigRational) {
        if !a.is_zero() {
            (BigRational::one(), a.recip(), BigRational::zero())
        } else if !b.is_zero() {
            (BigRational::one(), BigRational::zero(), b.recip())
        } else {
            (BigRational::zero(), BigRational::zero(), BigRational::zero())
        }
    }

    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }

    fn ideal_quotient_length(
        &self,
        a: Option<&BigRational>,
        b: Option<&BigRational>,
        spec: LengthSpec,
    ) -> Result<LengthValue> {
        field_quotient_length(
            a.is_some_and(|x| !x.is_zero()),
            b.is_some_and(|x| !x.is_zero()),
            spec,
            true,
        )
        .ok_or_else(|| unsupported(spec, self.name()))
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

/// The base ring of a presentation, with coefficients stored as canonical rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    IntegersModN(BigUint),
    PrimeField(u64),
    Rationals,
}

impl BaseRing {
    pub fn zmod(n: u64) -> Self {
        BaseRing::IntegersModN(BigUint::from(n))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BaseRing::PrimeField(_) | BaseRing::Rationals)
    }

    /// Check that `spec` makes sense over this base.
    pub fn check_length(&self, spec: LengthSpec) -> Result<()> {
        let ok = match spec {
            LengthSpec::Dimension => self.is_field(),
            LengthSpec::Rank => matches!(self, BaseRing::Integers | BaseRing::Rationals),
            LengthSpec::LogCard => matches!(self, BaseRing::Integers | BaseRing::IntegersModN(_)),
        };
        if ok {
            Ok(())
        } else {
            Err(unsupported(spec, self.to_string()))
        }
    }

    /// Canonical coefficient: reduced into `[0, n)` or `[0, p)`; `None` when
    /// the rational cannot be mapped (fractional over ℤ, non-invertible denominator).
    pub fn canonical(&self, q: &Rational) -> Option<Rational> {
        match self {
            BaseRing::Rationals => Some(q.clone()),
            BaseRing::Integers => q.is_integer().then(|| q.clone()),
            BaseRing::PrimeField(p) => {
                let f = PrimeField::new(*p);
                f.from_rational(q).map(|e| f.to_rational(&e))
            }
            BaseRing::IntegersModN(n) => {
                let n = BigInt::from_biguint(Sign::Plus, n.clone());
                let d = q.denom().mod_floor(&n);
                let e = d.extended_gcd(&n);
                if !e.gcd.is_one() {
                    return None;
                }
                let v = (q.numer() * e.x).mod_floor(&n);
                Some(Rational::from_integer(v))
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::IntegersModN(n) => write!(f, "Z/{n}"),
            BaseRing::PrimeField(p) => write!(f, "F{p}"),
            BaseRing::Rationals => write!(f, "Q"),
        }
    }
}

/// Coefficient arithmetic of a [`BaseRing`] on canonical rationals.
impl Coeffs for BaseRing {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        self.canonical(&Rational::one()).unwrap()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.canonical(&(a + b)).unwrap()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.canonical(&(a - b)).unwrap()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.canonical(&(a * b)).unwrap()
    }
    fn neg(&self, a: &Rational) -> Rational {
        self.canonical(&-a).unwrap()
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        self.canonical(q)
    }
    fn to_rational(&self, a: &Rational) -> Rational {
        a.clone()
    }
}
