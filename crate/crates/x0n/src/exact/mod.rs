//! Exact coefficient arithmetic: arbitrary-precision rationals and the
//! cyclotomic field Q(zeta_N).
//!
//! Rationals are `num_rational::BigRational`, which keeps gcd-reduced
//! numerator/denominator with a positive denominator on every operation.
//! [`CycNum`] represents elements of Q(zeta_N) reduced modulo the N-th
//! cyclotomic polynomial, so equality and the zero test are coefficient-wise.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_poly, CycNum};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number, reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat_i64(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Positive divisors of n, ascending.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

/// Canonical representative of `k` in `0..n`.
pub fn modn(k: i64, n: u32) -> u32 {
    let n = n as i64;
    (((k % n) + n) % n) as u32
}

/// Parse a rational literal like `-3`, `5/2`, `6461/3`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: integer when the denominator is 1, else `a/b`.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the coefficient denominators.
pub fn denom_lcm<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for c in coeffs {
        l = num_integer::lcm(l, c.denom().clone());
    }
    l
}

/// Greatest common divisor of the coefficient numerators (after clearing
/// denominators the result is the content of the integer polynomial).
pub fn numer_gcd<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = num_integer::gcd(g, c.abs());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(25), 20);
        assert_eq!(euler_phi(52), 24);
    }

    #[test]
    fn divisors_of_52() {
        assert_eq!(divisors(52), vec![1, 2, 4, 13, 26, 52]);
    }

    #[test]
    fn rational_round_trip() {
        let r = parse_rational("-6461/3").unwrap();
        assert_eq!(rational_str(&r), "-6461/3");
        let s = parse_rational("8").unwrap();
        assert_eq!(rational_str(&s), "8");
    }

    #[test]
    fn rational_exactness() {
        // (a/b + c/d) recombines exactly.
        let a = rat(1, 6);
        let b = rat(1, 10);
        assert_eq!(a + b, rat(4, 15));
    }
}
