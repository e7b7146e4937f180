//! Exact scalar arithmetic. Every coefficient in this crate is a `Rat`
//! (arbitrary-precision rational); there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d` in lowest terms. Panics on `d = 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

/// `2^e` for a possibly negative exponent.
pub fn pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::from(2).pow(e as u32))
    } else {
        Rat::one() / Rat::from_integer(BigInt::from(2).pow((-e) as u32))
    }
}

/// Falling factorial `n(n-1)...(n-k+1)` as an integer; zero when `k > n`.
pub fn falling(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k {
        acc *= int((n - i) as i64);
    }
    acc
}

pub fn factorial(n: usize) -> Int {
    falling(n, n)
}

/// Renders a rational as `a/b`, or just `a` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a` or `a/b`. Used by the CLI and the disk caches.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rat::new(numer, denom))
            }
        }
    }
}

/// Exact integer extraction; `None` when the rational is not an integer.
pub fn rat_to_int(r: &Rat) -> Option<Int> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["3", "-7", "2/3", "-11/4"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(
            rat_from_str("4/6").map(|r| rat_to_string(&r)).unwrap(),
            "2/3"
        );
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("x").is_none());
    }

    #[test]
    fn falling_factorial() {
        assert_eq!(falling(5, 3), int(60));
        assert_eq!(falling(3, 5), int(0));
        assert_eq!(falling(4, 0), int(1));
        assert_eq!(factorial(6), int(720));
    }

    #[test]
    fn pow2_negative() {
        assert_eq!(pow2(-3), frac(1, 8));
        assert_eq!(pow2(4), rat(16));
    }
}
