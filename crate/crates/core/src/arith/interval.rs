//! Fixed-point enclosures of natural logarithms.
//!
//! Every value is an integer interval `[lo, hi]` meaning `[lo, hi] * 2^-bits`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl Enclosure {
    pub fn exact(v: BigInt, bits: u32) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        debug_assert_eq!(self.bits, other.bits);
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    /// Multiply by a rational scalar, rounding outward.
    pub fn scale(&self, q: &BigRational) -> Enclosure {
        let (num, den) = (q.numer(), q.denom());
        let a = floor_div(&(&self.lo * num), den);
        let b = ceil_div(&(&self.lo * num), den);
        let c = floor_div(&(&self.hi * num), den);
        let d = ceil_div(&(&self.hi * num), den);
        if num.is_negative() {
            Enclosure {
                lo: c,
                hi: b,
                bits: self.bits,
            }
        } else {
            Enclosure {
                lo: a,
                hi: d,
                bits: self.bits,
            }
        }
    }

    /// Enclosure of a rational constant.
    pub fn rational(q: &BigRational, bits: u32) -> Enclosure {
        let scaled = q.numer() << bits as usize;
        Enclosure {
            lo: floor_div(&scaled, q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            bits,
        }
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// `2 * atanh(u/v)` for `0 <= u/v <= 1/3`, enclosed at `bits` fractional bits.
fn two_atanh(u: &BigInt, v: &BigInt, bits: u32) -> Enclosure {
    if u.is_zero() {
        return Enclosure::exact(BigInt::zero(), bits);
    }
    let scale = BigInt::one() << bits as usize;
    let u2 = u * u;
    let v2 = v * v;
    let mut num = u.clone();
    let mut den = v.clone();
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut k = 1u64;
    loop {
        let term = (&scale * &num) / (&den * BigInt::from(k));
        if term.is_zero() {
            break;
        }
        sum += term;
        terms += 1;
        num *= &u2;
        den *= &v2;
        k += 2;
    }
    // Each term is truncated by < 1 ulp; the tail after the first vanishing term
    // is below 9/8 ulp since the ratio of consecutive terms is at most 1/9.
    let lo = &sum * 2;
    let hi = (&sum + BigInt::from(terms + 2)) * 2;
    Enclosure { lo, hi, bits }
}

/// Enclosure of `ln(p)` for `p >= 1`.
pub fn ln_enclosure(p: &BigUint, bits: u32) -> Enclosure {
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    assert!(p.is_positive());
    if p.is_one() {
        return Enclosure::exact(BigInt::zero(), bits);
    }
    let guard = bits + 32;
    // p = 2^e * r with r in [1, 2)
    let e = p.bits() - 1;
    let pow = BigInt::one() << e as usize;
    // ln r = 2 atanh((r-1)/(r+1)) = 2 atanh((p - 2^e)/(p + 2^e)); ratio <= 1/3
    let ln_r = two_atanh(&(&p - &pow), &(&p + &pow), guard);
    // ln 2 = 2 atanh(1/3)
    let ln2 = two_atanh(&BigInt::one(), &BigInt::from(3), guard);
    let e_big = BigInt::from(e);
    let total = Enclosure {
        lo: &ln2.lo * &e_big + &ln_r.lo,
        hi: &ln2.hi * &e_big + &ln_r.hi,
        bits: guard,
    };
    shift_down(&total, guard - bits)
}

fn shift_down(e: &Enclosure, by: u32) -> Enclosure {
    let d = BigInt::one() << by as usize;
    Enclosure {
        lo: floor_div(&e.lo, &d),
        hi: ceil_div(&e.hi, &d),
        bits: e.bits - by,
    }
}
