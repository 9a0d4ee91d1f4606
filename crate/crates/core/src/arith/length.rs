//! Exact length values in the span of `{1} ∪ {log p : p prime}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::factorize;
use super::interval::{ln_enclosure, Enclosure};
use super::{fmt_rational, parse_rational};

/// One coordinate of the length basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Unit,
    Log(BigUint),
}

/// A signed rational combination of basis elements, no zero coefficients stored.
///
/// Used for polynomial coefficients and differences; nonnegative values are
/// wrapped in [`LengthValue`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<BasisKey, BigRational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn unit(q: BigRational) -> Self {
        let mut c = LinComb::zero();
        c.add_term(BasisKey::Unit, q);
        c
    }

    pub fn from_int(n: i64) -> Self {
        LinComb::unit(BigRational::from_integer(BigInt::from(n)))
    }

    /// `q * log p`; `p` must be prime.
    pub fn log_prime(p: BigUint, q: BigRational) -> Self {
        let mut c = LinComb::zero();
        c.add_term(BasisKey::Log(p), q);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, q: &BigRational) -> LinComb {
        if q.is_zero() {
            return LinComb::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * q)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }

    /// Enclosure of the real value at `bits` fractional bits.
    pub fn enclose(&self, bits: u32) -> Enclosure {
        let mut acc = Enclosure::exact(BigInt::zero(), bits);
        for (k, q) in &self.terms {
            let part = match k {
                BasisKey::Unit => Enclosure::rational(q, bits),
                BasisKey::Log(p) => ln_enclosure(p, bits).scale(q),
            };
            acc = acc.add(&part);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(k, q)| {
                let c = q.to_f64().unwrap_or(f64::NAN);
                match k {
                    BasisKey::Unit => c,
                    BasisKey::Log(p) => c * p.to_f64().unwrap_or(f64::INFINITY).ln(),
                }
            })
            .sum()
    }
}

impl Add for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        self + &(-rhs)
    }
}

impl Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, key: &BasisKey, q: &BigRational) -> fmt::Result {
    match key {
        BasisKey::Unit => write!(f, "{}", fmt_rational(q)),
        BasisKey::Log(p) => {
            if q.is_one() {
                write!(f, "log {p}")
            } else if q.is_integer() {
                write!(f, "{}·log {p}", q.numer())
            } else {
                write!(f, "({})·log {p}", fmt_rational(q))
            }
        }
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            if i == 0 {
                fmt_term(f, k, q)?;
            } else if q.is_negative() {
                write!(f, " - ")?;
                fmt_term(f, k, &-q)?;
            } else {
                write!(f, " + ")?;
                fmt_term(f, k, q)?;
            }
        }
        Ok(())
    }
}

/// An element of `[0, ∞]` living in the log-prime span, or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LengthValue {
    Finite(LinComb),
    Infinite,
}

/// Outcome of [`lv_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LvOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Largest precision used by [`lv_compare`] before giving up.
pub const COMPARE_PRECISION_CAP: u32 = 4096;

impl LengthValue {
    pub fn zero() -> Self {
        LengthValue::Finite(LinComb::zero())
    }

    pub fn from_int(n: u64) -> Self {
        LengthValue::Finite(LinComb::unit(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn unit(q: BigRational) -> Option<Self> {
        LengthValue::from_lincomb(LinComb::unit(q))
    }

    /// Fails when some coefficient is negative.
    pub fn from_lincomb(c: LinComb) -> Option<Self> {
        c.is_nonnegative().then_some(LengthValue::Finite(c))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LengthValue::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LengthValue::Finite(c) if c.is_zero())
    }

    pub fn finite(&self) -> Option<&LinComb> {
        match self {
            LengthValue::Finite(c) => Some(c),
            LengthValue::Infinite => None,
        }
    }

    /// Multiply by a nonnegative rational; `0 · ∞ = 0`.
    pub fn scale(&self, q: &BigRational) -> LengthValue {
        assert!(!q.is_negative(), "length values scale by nonnegative rationals only");
        match self {
            LengthValue::Infinite if q.is_zero() => LengthValue::zero(),
            LengthValue::Infinite => LengthValue::Infinite,
            LengthValue::Finite(c) => LengthValue::Finite(c.scale(q)),
        }
    }

    /// `log_n` normalization of a log-cardinality, defined when `n = p^e`.
    ///
    /// Returns `None` if `n` is not a prime power or the value involves other primes.
    pub fn rescale_log_base(&self, n: &BigUint) -> Option<LengthValue> {
        let fac = factorize(n);
        if fac.len() != 1 {
            return None;
        }
        let (p, e) = fac.into_iter().next()?;
        match self {
            LengthValue::Infinite => Some(LengthValue::Infinite),
            LengthValue::Finite(c) => {
                let mut unit = BigRational::zero();
                for (k, q) in c.terms() {
                    match k {
                        BasisKey::Log(q_p) if *q_p == p => {
                            unit += q / BigRational::from_integer(BigInt::from(e));
                        }
                        _ => return None,
                    }
                }
                LengthValue::unit(unit)
            }
        }
    }
}

/// Exact sum; anything plus infinity is infinity.
pub fn lv_add(a: &LengthValue, b: &LengthValue) -> LengthValue {
    match (a, b) {
        (LengthValue::Finite(x), LengthValue::Finite(y)) => LengthValue::Finite(x + y),
        _ => LengthValue::Infinite,
    }
}

impl Add for &LengthValue {
    type Output = LengthValue;
    fn add(self, rhs: &LengthValue) -> LengthValue {
        lv_add(self, rhs)
    }
}

/// `log N` expanded over the primes dividing `N`.
pub fn lv_of_group_order(n: &BigUint) -> LengthValue {
    let mut c = LinComb::zero();
    for (p, e) in factorize(n) {
        c.add_term(BasisKey::Log(p), BigRational::from_integer(BigInt::from(e)));
    }
    LengthValue::Finite(c)
}

/// Logarithm of `|n|` for a nonzero integer.
pub fn lv_log_abs(n: &BigInt) -> LengthValue {
    lv_of_group_order(n.magnitude())
}

/// Compare two values exactly where possible, then by interval evaluation
/// starting from `precision` bits and doubling up to [`COMPARE_PRECISION_CAP`].
pub fn lv_compare(a: &LengthValue, b: &LengthValue, precision: u32) -> LvOrdering {
    let (x, y) = match (a, b) {
        (LengthValue::Infinite, LengthValue::Infinite) => return LvOrdering::Equal,
        (LengthValue::Infinite, _) => return LvOrdering::Greater,
        (_, LengthValue::Infinite) => return LvOrdering::Less,
        (LengthValue::Finite(x), LengthValue::Finite(y)) => (x, y),
    };
    lincomb_compare(x, y, precision)
}

pub fn lincomb_compare(x: &LinComb, y: &LinComb, precision: u32) -> LvOrdering {
    let d = x - y;
    if d.is_zero() {
        return LvOrdering::Equal;
    }
    if d.terms().all(|(_, q)| q.is_positive()) {
        return LvOrdering::Greater;
    }
    if d.terms().all(|(_, q)| q.is_negative()) {
        return LvOrdering::Less;
    }
    let mut bits = precision.clamp(16, COMPARE_PRECISION_CAP);
    loop {
        let e = d.enclose(bits);
        if e.lo.is_positive() {
            return LvOrdering::Greater;
        }
        if e.hi.is_negative() {
            return LvOrdering::Less;
        }
        if bits >= COMPARE_PRECISION_CAP {
            return LvOrdering::Incomparable;
        }
        bits = (bits * 2).min(COMPARE_PRECISION_CAP);
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Infinite => write!(f, "∞"),
            LengthValue::Finite(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LinCombRepr {
    unit: String,
    logs: BTreeMap<String, String>,
}

impl LinComb {
    fn to_repr(&self) -> LinCombRepr {
        let mut logs = BTreeMap::new();
        let mut ordered: Vec<(&BigUint, &BigRational)> = Vec::new();
        for (k, v) in &self.terms {
            if let BasisKey::Log(p) = k {
                ordered.push((p, v));
            }
        }
        for (p, v) in ordered {
            logs.insert(p.to_string(), rational_string(v));
        }
        LinCombRepr {
            unit: rational_string(&self.coeff(&BasisKey::Unit)),
            logs,
        }
    }

    fn from_repr(r: &LinCombRepr) -> Result<LinComb, String> {
        let mut c = LinComb::zero();
        c.add_term(BasisKey::Unit, parse_rational(&r.unit)?);
        for (p, v) in &r.logs {
            let p: BigUint = p.parse().map_err(|_| format!("bad prime key {p:?}"))?;
            if !super::factor::is_probable_prime(&p) {
                return Err(format!("log key {p} is not prime"));
            }
            c.add_term(BasisKey::Log(p), parse_rational(v)?);
        }
        Ok(c)
    }
}

fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl Serialize for LinComb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinComb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LinCombRepr::deserialize(d)?;
        LinComb::from_repr(&r).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LengthRepr {
    Inf { inf: bool },
    Finite(LinCombRepr),
}

impl Serialize for LengthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LengthValue::Infinite => LengthRepr::Inf { inf: true }.serialize(s),
            LengthValue::Finite(c) => LengthRepr::Finite(c.to_repr()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for LengthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match LengthRepr::deserialize(d)? {
            LengthRepr::Inf { inf: true } => Ok(LengthValue::Infinite),
            LengthRepr::Inf { inf: false } => Err(D::Error::custom("\"inf\" must be true")),
            LengthRepr::Finite(r) => {
                let c = LinComb::from_repr(&r).map_err(D::Error::custom)?;
                LengthValue::from_lincomb(c).ok_or_else(|| D::Error::custom("negative length value"))
            }
        }
    }
}
