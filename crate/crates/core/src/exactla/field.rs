//! Arithmetic in the prime field F_p with representatives in `[0, p)`.

use crate::error::{Error, Result};

/// Default modulus used throughout the crate.
pub const DEFAULT_PRIME: u32 = 101;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if p >= 1 << 31 || !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(())
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(p: u32, mut a: u32, mut e: u64) -> u32 {
    let mut r = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(p, r, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; `a` must be nonzero mod p.
#[inline]
pub fn inv(p: u32, a: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow(p, a, p as u64 - 2)
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Inverse of [`reduce`] for display: values above p/2 print as negatives.
pub fn centered(p: u32, v: u32) -> i64 {
    if v as u64 * 2 > p as u64 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(check_prime(4).is_err());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 101] {
            for a in 1..p {
                assert_eq!(mul(p, a, inv(p, a)), 1);
            }
        }
        assert_eq!(reduce(5, -1), 4);
        assert_eq!(centered(101, 100), -1);
    }
}
