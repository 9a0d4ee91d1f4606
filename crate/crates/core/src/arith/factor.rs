//! Integer factorization into prime powers.
//!
//! Trial division handles the small primes; whatever cofactor survives is
//! split with Miller-Rabin and Pollard-Brent.

use std::collections::BTreeMap;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRIAL_LIMIT: u64 = 10_000;

/// Prime factorization of `n` as an ordered map `p -> e`. `factorize(1)` is empty.
///
/// Panics on `n == 0`.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for p in small_primes(TRIAL_LIMIT) {
        if rest.is_one() {
            return out;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    if !rest.is_one() {
        split_into(&rest, &mut out);
    }
    out
}

fn split_into(n: &BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(n);
    split_into(&d, out);
    split_into(&(n / &d), out);
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut primes = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// Deterministic for `n < 3.3e24` with the fixed witness set; probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    // Fixed seed keeps factorization (and therefore every output) deterministic.
    let mut rng = ChaCha8Rng::seed_from_u64(n.to_u64().unwrap_or(0x5eed));
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&one, n);
        let m = 64u32;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min((r - k) as u32) {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * diff) % n;
                }
                g = q.gcd(n);
                k += m as u64;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> Vec<(u64, u32)> {
        factorize(&BigUint::from(n))
            .into_iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_values() {
        assert!(fac(1).is_empty());
        assert_eq!(fac(12), vec![(2, 2), (3, 1)]);
        assert_eq!(fac(5), vec![(5, 1)]);
        assert_eq!(fac(840), vec![(2, 3), (3, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn large_semiprime() {
        // 1000003 * 999983, both beyond the trial-division bound
        assert_eq!(fac(1_000_003 * 999_983), vec![(999_983, 1), (1_000_003, 1)]);
        let big = BigUint::from(2u32).pow(61) - 1u32;
        assert!(is_probable_prime(&big));
    }

    #[test]
    fn products_match_trial_division() {
        for n in 1u64..2000 {
            let mut m = n;
            let mut expect = Vec::new();
            let mut p = 2;
            while m > 1 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                if e > 0 {
                    expect.push((p, e));
                }
                p += 1;
            }
            assert_eq!(fac(n), expect, "n = {n}");
        }
    }
}
