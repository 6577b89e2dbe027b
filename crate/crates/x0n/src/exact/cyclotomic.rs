//! The cyclotomic field Q(zeta_N).
//!
//! Elements are stored reduced modulo the N-th cyclotomic polynomial Phi_N,
//! as a coefficient vector of length phi(N). This makes the zero test (and
//! hence equality) purely coefficient-wise. Phi_N and the power table of
//! zeta_N are computed once per level and shared behind a process-wide memo.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{divisors, euler_phi, modn, rational_str, Rational};
use crate::{Error, Result};

/// N-th cyclotomic polynomial as integer coefficients, constant term first.
///
/// Computed by exact division of x^N - 1 by the product of Phi_d over the
/// proper divisors d of N; memoized per level.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    level_data(n).phi_poly_int.clone()
}

/// Exact division of integer polynomials (remainder must vanish).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// Per-level shared data: Phi_N and the reduced powers of zeta_N.
pub(crate) struct LevelData {
    pub n: u32,
    pub phi: u32,
    /// Phi_N as integers, constant term first (degree phi(N), monic).
    pub phi_poly_int: Vec<BigInt>,
    /// zeta_N^k reduced mod Phi_N, for k = 0..N-1.
    pub zeta_pows: Vec<Vec<Rational>>,
}

fn memo() -> &'static Mutex<HashMap<u32, Arc<LevelData>>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<LevelData>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn level_data(n: u32) -> Arc<LevelData> {
    if let Some(d) = memo().lock().unwrap().get(&n) {
        return d.clone();
    }
    // Compute outside the lock: cyclotomic_poly recurses into smaller levels.
    let phi_poly_int = cyclotomic_poly_raw(n);
    let phi = euler_phi(n);
    debug_assert_eq!(phi_poly_int.len() as u32, phi + 1);
    let mut zeta_pows = Vec::with_capacity(n as usize);
    // Reduce x^k mod Phi_N incrementally: multiply by x, reduce when needed.
    let mut cur = vec![BigRational::zero(); phi as usize];
    if phi >= 1 {
        cur[0] = BigRational::one();
    }
    for _k in 0..n {
        zeta_pows.push(cur.clone());
        // cur *= x
        let top = cur[phi as usize - 1].clone();
        for i in (1..phi as usize).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigRational::zero();
        if !top.is_zero() {
            // subtract top * (Phi_N - x^phi), i.e. use x^phi = -lower part
            for i in 0..phi as usize {
                cur[i] -= &top * BigRational::from_integer(phi_poly_int[i].clone());
            }
        }
    }
    let data = Arc::new(LevelData {
        n,
        phi,
        phi_poly_int,
        zeta_pows,
    });
    memo().lock().unwrap().entry(n).or_insert(data.clone());
    data
}

/// cyclotomic_poly without going through the memo for level n itself.
fn cyclotomic_poly_raw(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = level_data(d).phi_poly_int.clone();
        num = poly_div_exact(&num, &phi_d);
    }
    num
}

/// Element of Q(zeta_N), reduced mod Phi_N: a polynomial in zeta_N of
/// degree < phi(N).
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero(level: u32) -> Self {
        let phi = euler_phi(level) as usize;
        CycNum {
            level,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn from_rational(level: u32, r: Rational) -> Self {
        let mut z = CycNum::zero(level);
        z.coeffs[0] = r;
        z
    }

    pub fn one(level: u32) -> Self {
        CycNum::from_rational(level, BigRational::one())
    }

    /// zeta_N^k, k arbitrary (reduced mod N).
    pub fn zeta_pow(level: u32, k: i64) -> Self {
        let data = level_data(level);
        let k = modn(k, level) as usize;
        CycNum {
            level,
            coeffs: data.zeta_pows[k].clone(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_level(&self, other: &Self) {
        assert_eq!(
            self.level, other.level,
            "cyclotomic level mismatch: {} vs {}",
            self.level, other.level
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            level: self.level,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum {
            level: self.level,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        let phi = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        reduce_mod_phi(self.level, prod)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Field inverse; Phi_N is irreducible over Q so the extended Euclidean
    /// algorithm with Phi_N terminates with a unit gcd for any nonzero input.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::CyclotomicDivisionByZero);
        }
        let data = level_data(self.level);
        // Extended Euclid over Q[x]: gcd(self, Phi_N) = 1 = s*self + t*Phi_N.
        let mut r0: Vec<Rational> = data
            .phi_poly_int
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd; inverse is s0 / r0.
        assert_eq!(r0.len(), 1, "Phi_N must be irreducible over Q");
        let c = r0[0].clone();
        let mut coeffs: Vec<Rational> = s0.iter().map(|a| a / &c).collect();
        coeffs.resize(data.phi as usize, BigRational::zero());
        Ok(CycNum {
            level: self.level,
            coeffs,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Canonical text form: polynomial in `z` with rational coefficients,
    /// lowest power first, e.g. `-1`, `8*z^2`, `1/2 - z`.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mag_str = rational_str(&mag);
            let term = if k == 0 {
                mag_str
            } else {
                let pow = if k == 1 {
                    "z".to_string()
                } else {
                    format!("z^{k}")
                };
                if mag.is_one() {
                    pow
                } else {
                    format!("{mag_str}*{pow}")
                }
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({}; {})", self.level, self.text())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

fn reduce_mod_phi(level: u32, mut poly: Vec<Rational>) -> CycNum {
    let data = level_data(level);
    let phi = data.phi as usize;
    for k in (phi..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        // x^k = x^(k-phi) * x^phi, and x^phi = -(lower part of Phi_N)
        for i in 0..phi {
            let t = &c * BigRational::from_integer(data.phi_poly_int[i].clone());
            poly[k - phi + i] -= t;
        }
    }
    poly.truncate(phi);
    poly.resize(phi, BigRational::zero());
    CycNum {
        level,
        coeffs: poly,
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = den.to_vec();
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], trim(rem));
    }
    let lead = den[dd].clone();
    let nd = rem.len() - 1;
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_i64;

    fn poly_str(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn phi_1_is_x_minus_1() {
        assert_eq!(poly_str(&cyclotomic_poly(1)), vec![-1, 1]);
    }

    #[test]
    fn phi_4_is_x2_plus_1() {
        assert_eq!(poly_str(&cyclotomic_poly(4)), vec![1, 0, 1]);
    }

    #[test]
    fn phi_14_matches_long_division_oracle() {
        // Oracle: divide x^14 - 1 by Phi_1 * Phi_2 * Phi_7 directly.
        let mut num = vec![BigInt::zero(); 15];
        num[0] = -BigInt::one();
        num[14] = BigInt::one();
        let p1 = vec![-BigInt::one(), BigInt::one()];
        let p2 = vec![BigInt::one(), BigInt::one()];
        let p7: Vec<BigInt> = (0..7).map(|_| BigInt::one()).collect();
        let oracle = poly_div_exact(&poly_div_exact(&poly_div_exact(&num, &p1), &p2), &p7);
        assert_eq!(cyclotomic_poly(14), oracle);
        // x^6 - x^5 + x^4 - x^3 + x^2 - x + 1
        assert_eq!(poly_str(&cyclotomic_poly(14)), vec![1, -1, 1, -1, 1, -1, 1]);
    }

    #[test]
    fn zeta_pow_periodicity_and_identity() {
        let one = CycNum::zeta_pow(14, 0);
        assert_eq!(one, CycNum::one(14));
        assert_eq!(CycNum::zeta_pow(14, 14), CycNum::one(14));
        assert_eq!(CycNum::zeta_pow(14, -3), CycNum::zeta_pow(14, 11));
    }

    #[test]
    fn zeta14_6_reduced_form() {
        // zeta^6 mod Phi_14 = zeta^5 - zeta^4 + zeta^3 - zeta^2 + zeta - 1
        let z6 = CycNum::zeta_pow(14, 6);
        let expect: Vec<Rational> = [-1i64, 1, -1, 1, -1, 1].iter().map(|&c| rat_i64(c)).collect();
        assert_eq!(z6.coeffs(), &expect[..]);
    }

    #[test]
    fn group_law_and_inverse() {
        let a = CycNum::zeta_pow(14, 9);
        let b = CycNum::zeta_pow(14, 11);
        assert_eq!(a.mul(&b), CycNum::zeta_pow(14, 20));
        let inv = CycNum::zeta_pow(14, 3).inv().unwrap();
        assert_eq!(inv, CycNum::zeta_pow(14, 11));
        assert_eq!(CycNum::zeta_pow(14, 3).mul(&inv), CycNum::one(14));
    }

    #[test]
    fn add_neg_cancels() {
        let x = CycNum::zeta_pow(14, 5).add(&CycNum::from_rational(14, rat_i64(7)));
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn multiplicative_order_of_zeta_power() {
        // zeta_N^k has order N/gcd(N,k).
        for (n, k) in [(14u32, 6i64), (12, 8), (9, 3)] {
            let ord = n / num_integer::gcd(n, k as u32);
            let z = CycNum::zeta_pow(n, k);
            let mut acc = CycNum::one(n);
            for step in 1..=ord {
                acc = acc.mul(&z);
                if step < ord {
                    assert_ne!(acc, CycNum::one(n), "order too small at step {step}");
                }
            }
            assert_eq!(acc, CycNum::one(n));
        }
    }

    #[test]
    fn inverse_of_zero_errors() {
        assert!(CycNum::zero(14).inv().is_err());
    }

    #[test]
    fn text_form() {
        let x = CycNum::zeta_pow(14, 2).scale(&rat_i64(8));
        assert_eq!(x.text(), "8*z^2");
    }
}
