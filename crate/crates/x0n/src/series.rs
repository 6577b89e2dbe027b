//! Truncated Laurent series over an abstract coefficient ring.
//!
//! A series lives in a variable identified by a [`VarTag`]: the level N, the
//! cusp divisor D (so the underlying variable is q_D = exp(2*pi*i*tau*D/N)),
//! and a unit e meaning exponents count powers of q_D^e. Rebasing a series
//! from q_D to the local parameter q_D^(D,N/D) is [`LaurentSeries::rebase`],
//! which doubles as a correctness check: an expansion of a Gamma_0(N)-
//! invariant function must be supported on that exponent lattice.
//!
//! Precision is tracked pessimistically through every operation: a series
//! with precision `prec` is known modulo the variable to the power `prec`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{rational_str, CycNum, Rational};
use crate::{Error, Result};

/// Coefficient ring abstraction; implemented by `Rational` and [`CycNum`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn c_zero(&self) -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_add(&self, other: &Self) -> Self;
    fn c_sub(&self, other: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_mul(&self, other: &Self) -> Self;
    fn c_inv(&self) -> Result<Self>;
    fn c_scale(&self, r: &Rational) -> Self;
    fn c_from_rational(&self, r: &Rational) -> Self;
    fn c_text(&self) -> String;
}

impl Coeff for Rational {
    fn c_zero(&self) -> Self {
        BigRational::zero()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, other: &Self) -> Self {
        self + other
    }
    fn c_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn c_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeriesInverse);
        }
        Ok(BigRational::one() / self)
    }
    fn c_scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn c_from_rational(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn c_text(&self) -> String {
        rational_str(self)
    }
}

impl Coeff for CycNum {
    fn c_zero(&self) -> Self {
        CycNum::zero(self.level())
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn c_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn c_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn c_scale(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn c_from_rational(&self, r: &Rational) -> Self {
        CycNum::from_rational(self.level(), r.clone())
    }
    fn c_text(&self) -> String {
        self.text()
    }
}

/// Identifies the variable a series is written in: q_D^unit at level N.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VarTag {
    pub n: u32,
    pub d: u32,
    /// Exponents count powers of q_D^unit (1 before rebasing).
    pub unit: u32,
}

impl VarTag {
    pub fn new(n: u32, d: u32) -> Self {
        VarTag { n, d, unit: 1 }
    }
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit == 1 {
            write!(f, "q_{} (N={})", self.d, self.n)
        } else {
            write!(f, "q_{}^{} (N={})", self.d, self.unit, self.n)
        }
    }
}

/// Truncated Laurent series: coefficients for exponents `val .. prec`.
///
/// Invariants: the leading stored coefficient is nonzero unless the series
/// is identically zero to the stated precision (then `coeffs` is empty and
/// `val == prec`); always `val <= prec`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C: Coeff> {
    tag: VarTag,
    val: i64,
    prec: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> LaurentSeries<C> {
    /// Zero series known modulo q^prec.
    pub fn zero(tag: VarTag, prec: i64) -> Self {
        LaurentSeries {
            tag,
            val: prec,
            prec,
            coeffs: vec![],
        }
    }

    /// Build from raw coefficients starting at exponent `val`; trims leading
    /// and trailing zeros against the invariants.
    pub fn from_coeffs(tag: VarTag, mut val: i64, prec: i64, mut coeffs: Vec<C>) -> Self {
        coeffs.truncate((prec - val).max(0) as usize);
        let lead_zeros = coeffs.iter().take_while(|c| c.c_is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            val += lead_zeros as i64;
        }
        while coeffs.last().map_or(false, |c| c.c_is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return LaurentSeries::zero(tag, prec);
        }
        LaurentSeries {
            tag,
            val,
            prec,
            coeffs,
        }
    }

    pub fn constant(tag: VarTag, c: C, prec: i64) -> Self {
        LaurentSeries::from_coeffs(tag, 0, prec, vec![c])
    }

    /// Monomial c * q^k.
    pub fn monomial(tag: VarTag, c: C, k: i64, prec: i64) -> Self {
        LaurentSeries::from_coeffs(tag, k, prec, vec![c])
    }

    pub fn tag(&self) -> VarTag {
        self.tag
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn coeff(&self, k: i64) -> Option<C> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return self.coeffs.first().map(|c| c.c_zero());
        }
        let idx = (k - self.val) as usize;
        Some(match self.coeffs.get(idx) {
            Some(c) => c.clone(),
            None => self.coeffs[0].c_zero(),
        })
    }

    /// Iterate (exponent, coefficient) over stored nonzero coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.c_is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(
                self.tag.to_string(),
                other.tag.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let prec = self.prec.min(other.prec);
        let val = self.val.min(other.val).min(prec);
        // Allocation is capped by the actual stored support; coefficients
        // beyond it are exact zeros up to `prec` (constants carry a huge
        // sentinel precision, so `prec - val` alone is not a usable length).
        let support_end = |s: &Self| {
            if s.coeffs.is_empty() {
                i64::MIN / 2
            } else {
                s.val + s.coeffs.len() as i64
            }
        };
        let end = support_end(self).max(support_end(other));
        let len = (end.min(prec) - val).max(0) as usize;
        let proto = self
            .coeffs
            .first()
            .or(other.coeffs.first())
            .map(|c| c.c_zero());
        let zero = match proto {
            Some(z) => z,
            None => return Ok(LaurentSeries::zero(self.tag, prec)),
        };
        let mut out = vec![zero; len];
        for (e, c) in self.iter() {
            if e < prec {
                out[(e - val) as usize] = c.clone();
            }
        }
        for (e, c) in other.iter() {
            if e < prec {
                let i = (e - val) as usize;
                out[i] = out[i].c_add(c);
            }
        }
        Ok(LaurentSeries::from_coeffs(self.tag, val, prec, out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            tag: self.tag,
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.c_neg()).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return LaurentSeries::zero(self.tag, self.prec);
        }
        LaurentSeries {
            tag: self.tag,
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.c_scale(r)).collect(),
        }
    }

    pub fn scale_coeff(&self, c0: &C) -> Self {
        if c0.c_is_zero() {
            return LaurentSeries::zero(self.tag, self.prec);
        }
        LaurentSeries {
            tag: self.tag,
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.c_mul(c0)).collect(),
        }
    }

    /// Schoolbook product. Output precision: min(p1 + v2, p2 + v1).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentSeries::zero(self.tag, prec));
        }
        let val = self.val + other.val;
        // Support of the product is at most len_a + len_b - 1 terms.
        let support = (self.coeffs.len() + other.coeffs.len() - 1) as i64;
        let len = (prec - val).max(0).min(support) as usize;
        let zero = self.coeffs[0].c_zero();
        let mut out = vec![zero; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.c_is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.c_is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].c_add(&a.c_mul(b));
            }
        }
        Ok(LaurentSeries::from_coeffs(self.tag, val, prec, out))
    }

    /// Multiplicative inverse. Requires an invertible leading coefficient;
    /// output precision is prec - 2*val.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeriesInverse);
        }
        let lead_inv = self.coeffs[0].c_inv()?;
        let out_prec = self.prec - 2 * self.val;
        let out_val = -self.val;
        let len = (out_prec - out_val).max(0) as usize;
        if len == 0 {
            return Ok(LaurentSeries::zero(self.tag, out_prec));
        }
        // A monomial inverts to a monomial regardless of precision.
        if self.coeffs.len() == 1 {
            return Ok(LaurentSeries::from_coeffs(
                self.tag,
                out_val,
                out_prec,
                vec![lead_inv],
            ));
        }
        assert!(
            len < (1 << 26),
            "series inverse needs a finite target precision, got {out_prec}"
        );
        // Normalize to u = 1 + sum_{k>=1} u_k q^k, invert, shift back.
        let zero = self.coeffs[0].c_zero();
        let mut u = vec![zero.clone(); len];
        for (i, c) in self.coeffs.iter().enumerate().take(len) {
            u[i] = c.c_mul(&lead_inv);
        }
        let mut inv = vec![zero; len];
        inv[0] = self.coeffs[0].c_zero().c_from_rational(&BigRational::one());
        for k in 1..len {
            let mut acc = inv[0].c_zero();
            for j in 1..=k {
                if !u[j].c_is_zero() && !inv[k - j].c_is_zero() {
                    acc = acc.c_add(&u[j].c_mul(&inv[k - j]));
                }
            }
            inv[k] = acc.c_neg();
        }
        for c in inv.iter_mut() {
            *c = c.c_mul(&lead_inv);
        }
        Ok(LaurentSeries::from_coeffs(self.tag, out_val, out_prec, inv))
    }

    /// Integer power (binary), n >= 0. The multiplication chain tracks the
    /// resulting precision on its own.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let proto = match self.coeffs.first() {
            Some(c) => c.clone(),
            None => {
                assert!(n >= 1, "0^0 of a zero-prototype series");
                return Ok(LaurentSeries::zero(self.tag, self.prec));
            }
        };
        let one = LaurentSeries::constant(
            self.tag,
            proto.c_zero().c_from_rational(&BigRational::one()),
            i64::MAX / 4,
        );
        let mut base = self.clone();
        let mut n = n;
        let mut acc = one;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reinterpret the series in the variable q_D^e. Every nonzero
    /// coefficient must sit at an exponent divisible by e.
    pub fn rebase(&self, e: u32) -> Result<Self> {
        assert!(e >= 1);
        let ei = e as i64;
        if e == 1 {
            return Ok(self.clone());
        }
        for (exp, _) in self.iter() {
            if exp.rem_euclid(ei) != 0 {
                return Err(Error::RebaseUnsupported {
                    e: ei,
                    exponent: exp,
                });
            }
        }
        let new_prec = self.prec.div_euclid(ei) + if self.prec.rem_euclid(ei) > 0 { 1 } else { 0 };
        if self.is_zero() {
            return Ok(LaurentSeries {
                tag: VarTag {
                    unit: self.tag.unit * e,
                    ..self.tag
                },
                val: new_prec,
                prec: new_prec,
                coeffs: vec![],
            });
        }
        let new_val = self.val / ei;
        let support = (self.coeffs.len() as i64 + ei - 1) / ei;
        let len = (new_prec - new_val).max(0).min(support) as usize;
        let zero = self.coeffs[0].c_zero();
        let mut out = vec![zero; len];
        for (exp, c) in self.iter() {
            let k = (exp / ei - new_val) as usize;
            if k < len {
                out[k] = c.clone();
            }
        }
        Ok(LaurentSeries::from_coeffs(
            VarTag {
                unit: self.tag.unit * e,
                ..self.tag
            },
            new_val,
            new_prec,
            out,
        ))
    }

    /// Restrict the known precision (no-op if already lower).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        LaurentSeries::from_coeffs(self.tag, self.val, prec, self.coeffs.clone())
    }

    /// Map coefficients into another ring.
    pub fn map<D: Coeff>(&self, tag: VarTag, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::from_coeffs(tag, self.val, self.prec, self.coeffs.iter().map(f).collect())
    }

    /// Human-readable form, e.g. `q^-2 + q^-1 + 2*q + ...` with `q` standing
    /// for the tagged variable.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return format!("0 + O(q^{})", self.prec);
        }
        let mut out = String::new();
        for (e, c) in self.iter() {
            let cs = c.c_text();
            let (sign, mag) = match cs.strip_prefix('-') {
                // A bare leading minus only exists for single-term coeffs.
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    ("-", rest.to_string())
                }
                _ => ("+", cs),
            };
            let needs_parens = mag.contains(' ');
            let mag = if needs_parens { format!("({mag})") } else { mag };
            let term = if e == 0 {
                mag
            } else {
                let q = if e == 1 {
                    "q".to_string()
                } else {
                    format!("q^{e}")
                };
                if mag == "1" {
                    q
                } else {
                    format!("{mag}*{q}")
                }
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out.push_str(&format!(" + O(q^{})", self.prec));
        out
    }

    /// JSON form with coefficients in the exact canonical text form.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<String> = (self.val..self.prec)
            .map(|k| self.coeff(k).map(|c| c.c_text()).unwrap_or_default())
            .collect();
        serde_json::json!({
            "var": "q_D",
            "N": self.tag.n,
            "D": self.tag.d,
            "unit": self.tag.unit,
            "val": self.val,
            "prec": self.prec,
            "coeffs": coeffs,
        })
    }
}

impl LaurentSeries<Rational> {
    /// Promote a rational series into Q(zeta_N) coefficients.
    pub fn to_cyc(&self, level: u32) -> LaurentSeries<CycNum> {
        self.map(self.tag(), |c| CycNum::from_rational(level, c.clone()))
    }
}

impl LaurentSeries<CycNum> {
    /// Demote to rational coefficients; errors when any coefficient has a
    /// nonzero zeta component.
    pub fn to_rational(&self) -> Result<LaurentSeries<Rational>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.coeffs.iter().enumerate() {
            match c.as_rational() {
                Some(r) => out.push(r),
                None => {
                    return Err(Error::NonRationalAtP(format!(
                        "coefficient of q^{} is {}",
                        self.val + e as i64,
                        c.text()
                    )))
                }
            }
        }
        Ok(LaurentSeries::from_coeffs(self.tag, self.val, self.prec, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_i64;

    fn t() -> VarTag {
        VarTag::new(14, 1)
    }

    fn series(val: i64, prec: i64, cs: &[i64]) -> LaurentSeries<Rational> {
        LaurentSeries::from_coeffs(t(), val, prec, cs.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn hand_expansion_product() {
        // (q^-1 + 1) * (q - 1) = -q^-1 + q
        let a = series(-1, 20, &[1, 1]);
        let b = series(0, 20, &[-1, 1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(-1).unwrap(), rat_i64(-1));
        assert_eq!(p.coeff(0).unwrap(), rat_i64(0));
        assert_eq!(p.coeff(1).unwrap(), rat_i64(1));
        assert_eq!(p.valuation(), -1);
    }

    #[test]
    fn mul_identity() {
        let s = series(-2, 15, &[1, 1, 0, 2]);
        let one = LaurentSeries::constant(t(), rat_i64(1), 100);
        assert_eq!(s.mul(&one).unwrap(), s);
    }

    #[test]
    fn square_of_f11_prefix() {
        // F_{1,1} = q^-2 + q^-1 + 2q + ... ; its square starts
        // q^-4 + 2q^-3 + q^-2 (hand oracle on the first terms).
        let f = series(-2, 2, &[1, 1, 0, 2]);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.valuation(), -4);
        assert_eq!(sq.coeff(-4).unwrap(), rat_i64(1));
        assert_eq!(sq.coeff(-3).unwrap(), rat_i64(2));
        assert_eq!(sq.coeff(-2).unwrap(), rat_i64(1));
        // prec = min(p1+v2, p2+v1) = 0 here
        assert_eq!(sq.prec(), 0);
    }

    #[test]
    fn geometric_inverse() {
        let s = series(0, 10, &[1, 1]); // 1 + q
        let inv = s.inv().unwrap();
        for k in 0..10 {
            assert_eq!(inv.coeff(k).unwrap(), rat_i64(if k % 2 == 0 { 1 } else { -1 }));
        }
        let prod = s.mul(&inv).unwrap();
        assert_eq!(prod.coeff(0).unwrap(), rat_i64(1));
        for k in 1..prod.prec() {
            assert_eq!(prod.coeff(k).unwrap(), rat_i64(0));
        }
    }

    #[test]
    fn inverse_of_monomial() {
        let q = series(1, 10, &[1]);
        let inv = q.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), rat_i64(1));
    }

    #[test]
    fn inverse_of_zero_errors() {
        let z: LaurentSeries<Rational> = LaurentSeries::zero(t(), 10);
        assert!(z.inv().is_err());
    }

    #[test]
    fn tag_mismatch_rejected() {
        let a = series(0, 5, &[1]);
        let b = LaurentSeries::from_coeffs(VarTag::new(14, 2), 0, 5, vec![rat_i64(1)]);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn rebase_even_lattice() {
        // q^2 + q^4 with e=2 -> t + t^2
        let s = series(2, 10, &[1, 0, 1]);
        let r = s.rebase(2).unwrap();
        assert_eq!(r.valuation(), 1);
        assert_eq!(r.coeff(1).unwrap(), rat_i64(1));
        assert_eq!(r.coeff(2).unwrap(), rat_i64(1));
        assert_eq!(r.tag().unit, 2);
    }

    #[test]
    fn rebase_odd_exponent_errors() {
        let s = series(1, 10, &[1, 1]); // q + q^2
        match s.rebase(2) {
            Err(Error::RebaseUnsupported { e: 2, exponent: 1 }) => {}
            other => panic!("expected rebase error, got {other:?}"),
        }
    }

    #[test]
    fn valuation_additive_under_mul() {
        let a = series(-3, 9, &[2, 1]);
        let b = series(2, 9, &[5, 0, 1]);
        assert_eq!(a.mul(&b).unwrap().valuation(), -1);
    }
}
