//! The expansion engine: p-difference q-expansions, W_a quotients, and
//! trace functions T(W_a W_b) expanded at any cusp class of Gamma_0(N).
//!
//! All expansions happen in the q_D variable of a cusp class <u/D> through
//! the matrix B(u,D) = [[u, c], [D, dd]]. The double-sum expansion of
//! p(r(D tau + dd)/N) - p(s(D tau + dd)/N) has, for each of r and s, the
//! terms
//!
//!   sum_{m>=0, n>=1}  n zeta^( n mu(r) r dd) q_D^( n {r}_D + m n N/D)
//! + sum_{m>=1, n>=1}  n zeta^(-n mu(r) r dd) q_D^(-n {r}_D + m n N/D)
//!
//! with zeta = exp(2 pi i / N) and ({r}_D, mu(r)) the folded residue of r
//! mod N/D. When {r}_D = 0 the m = 0 block of the first sum degenerates; it
//! contributes the exact constant zeta^(r dd) / (1 - zeta^(r dd))^2 instead
//! (the value of x/(1-x)^2 at x = zeta^(r dd), which the geometric expansion
//! no longer reaches). At <1/1> the matrix entry dd is 0, every zeta power
//! collapses to 1, and the whole computation stays inside Q.
//!
//! The trace over Gamma_0(N)/{+-1}Gamma_1(N) never builds coset matrices:
//! W_a(M_lambda tau) = W_{lambda a}(tau) turns it into a sum over the
//! folded units lambda.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{modn, rat_i64, rational_str, CycNum, Rational};
use crate::modcurve::{lambda_orbit, CuspClass, WVector};
use crate::series::{Coeff, LaurentSeries, VarTag};
use crate::{Error, Result};

/// A single trace term c * T(W_a) or c * T(W_a W_b).
#[derive(Clone, Debug, PartialEq)]
pub struct TraceTerm {
    pub coeff: Rational,
    pub a: WVector,
    pub b: Option<WVector>,
}

/// Formal expression alpha + sum_i c_i T(W_{a_i} [W_{b_i}]).
#[derive(Clone, Debug, PartialEq)]
pub struct ModFuncExpr {
    pub level: u32,
    pub constant: Rational,
    pub terms: Vec<TraceTerm>,
}

impl ModFuncExpr {
    pub fn constant_expr(level: u32, c: Rational) -> Self {
        ModFuncExpr {
            level,
            constant: c,
            terms: vec![],
        }
    }

    pub fn single(level: u32, coeff: Rational, a: [i64; 4]) -> Result<Self> {
        Ok(ModFuncExpr {
            level,
            constant: BigRational::zero(),
            terms: vec![TraceTerm {
                coeff,
                a: WVector::new(level, a)?,
                b: None,
            }],
        })
    }

    pub fn product(level: u32, coeff: Rational, a: [i64; 4], b: [i64; 4]) -> Result<Self> {
        Ok(ModFuncExpr {
            level,
            constant: BigRational::zero(),
            terms: vec![TraceTerm {
                coeff,
                a: WVector::new(level, a)?,
                b: Some(WVector::new(level, b)?),
            }],
        })
    }

    /// Multiply the whole expression by a rational scalar.
    pub fn scaled(&self, s: &Rational) -> Self {
        ModFuncExpr {
            level: self.level,
            constant: &self.constant * s,
            terms: self
                .terms
                .iter()
                .map(|t| TraceTerm {
                    coeff: &t.coeff * s,
                    a: t.a,
                    b: t.b,
                })
                .collect(),
        }
    }

    pub fn plus_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// Sum of two expressions at the same level, merging equal trace terms.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        out.constant += &other.constant;
        for t in &other.terms {
            if let Some(existing) = out.terms.iter_mut().find(|e| e.a == t.a && e.b == t.b) {
                existing.coeff += &t.coeff;
            } else {
                out.terms.push(t.clone());
            }
        }
        out.terms.retain(|t| !t.coeff.is_zero());
        out
    }

    /// Canonical text in the CLI grammar, e.g. `-3 + T[5,1,2,1]` or
    /// `1/2*T[6,1,3,1]*[7,1,2,1]`.
    pub fn text(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            let neg = self.constant < BigRational::zero();
            let mag = if neg {
                -self.constant.clone()
            } else {
                self.constant.clone()
            };
            parts.push((neg, rational_str(&mag)));
        }
        for t in &self.terms {
            let neg = t.coeff < BigRational::zero();
            let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            let mut s = String::new();
            if !mag.is_one() {
                s.push_str(&rational_str(&mag));
                s.push('*');
            }
            let [a1, a2, a3, a4] = t.a.a;
            s.push_str(&format!("T[{a1},{a2},{a3},{a4}]"));
            if let Some(b) = &t.b {
                let [b1, b2, b3, b4] = b.a;
                s.push_str(&format!("*[{b1},{b2},{b3},{b4}]"));
            }
            parts.push((neg, s));
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(s);
        }
        out
    }

    /// Parse the CLI expression grammar:
    /// EXPR := TERM (('+'|'-') TERM)* ;
    /// TERM := RAT | RAT '*' TRACE | TRACE ;
    /// TRACE := 'T[' INT,INT,INT,INT ']' ('*[' INT,INT,INT,INT ']')?
    pub fn parse(level: u32, input: &str) -> Result<Self> {
        Parser {
            level,
            chars: input.chars().collect(),
            pos: 0,
            input,
        }
        .parse()
    }
}

struct Parser<'a> {
    level: u32,
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in `{}`", self.pos, self.input))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| self.err("integer overflow"))?;
        Ok(if neg { -v } else { v })
    }

    fn vector(&mut self) -> Result<[i64; 4]> {
        self.skip_ws();
        self.expect('[')?;
        let mut v = [0i64; 4];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = self.integer()?;
            self.skip_ws();
            if i < 3 {
                self.expect(',')?;
            }
        }
        self.expect(']')?;
        Ok(v)
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat('/') {
            let den = self.integer()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(num.into(), den.into()))
        } else {
            Ok(rat_i64(num))
        }
    }

    fn trace(&mut self, coeff: Rational) -> Result<TraceTerm> {
        self.expect('T')?;
        let a = WVector::new(self.level, self.vector()?)?;
        let b = if self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            Some(WVector::new(self.level, self.vector()?)?)
        } else {
            None
        };
        Ok(TraceTerm { coeff, a, b })
    }

    fn parse(mut self) -> Result<ModFuncExpr> {
        let mut expr = ModFuncExpr::constant_expr(self.level, BigRational::zero());
        let mut sign;
        let mut first = true;
        loop {
            self.skip_ws();
            if first {
                sign = if self.eat('-') {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                self.skip_ws();
            } else {
                if self.pos >= self.chars.len() {
                    break;
                }
                sign = if self.eat('+') {
                    BigRational::one()
                } else if self.eat('-') {
                    -BigRational::one()
                } else {
                    return Err(self.err("expected `+` or `-`"));
                };
                self.skip_ws();
            }
            first = false;
            match self.peek() {
                Some('T') => {
                    let t = self.trace(sign.clone())?;
                    expr.terms.push(t);
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    self.skip_ws();
                    if self.eat('*') {
                        self.skip_ws();
                        let t = self.trace(&sign * &r)?;
                        expr.terms.push(t);
                    } else {
                        expr.constant += &sign * &r;
                    }
                }
                _ => return Err(self.err("expected term")),
            }
        }
        Ok(expr)
    }
}

/// Access to roots of unity for a coefficient ring. The rational instance is
/// only valid when every requested exponent vanishes mod N, which is exactly
/// the situation at <1/1> where the B-matrix entry dd is 0.
trait ZetaRing: Coeff {
    fn zeta(level: u32, k: i64) -> Self;
    fn from_rat(level: u32, r: Rational) -> Self;
}

impl ZetaRing for CycNum {
    fn zeta(level: u32, k: i64) -> Self {
        CycNum::zeta_pow(level, k)
    }
    fn from_rat(level: u32, r: Rational) -> Self {
        CycNum::from_rational(level, r)
    }
}

impl ZetaRing for Rational {
    fn zeta(level: u32, k: i64) -> Self {
        assert_eq!(
            modn(k, level),
            0,
            "rational fast path requires trivial zeta powers"
        );
        BigRational::one()
    }
    fn from_rat(_level: u32, r: Rational) -> Self {
        r
    }
}

/// The p-difference expansion at a cusp class, in q_D units (unit 1).
/// `r` and `s` are the (already lambda-scaled) division point indices.
fn wp_diff_in<C: ZetaRing>(
    n: u32,
    q: &CuspClass,
    r: i64,
    s: i64,
    prec: i64,
) -> Result<LaurentSeries<C>> {
    let tag = VarTag::new(n, q.d);
    if modn(r, n) == 0 || modn(s, n) == 0 {
        return Err(Error::InvalidVector(r, s, r, s, n));
    }
    let len = prec.max(0) as usize;
    let zero = C::from_rat(n, BigRational::zero());
    let mut acc = vec![zero; len];
    let step = (n / q.d) as i64; // N/D
    for (x, sign) in [(r, 1i64), (s, -1i64)] {
        let (v, mu) = crate::modcurve::braces_mu(x, q.d, n);
        let v = v as i64;
        let base_exp = mu * x * q.dd; // zeta exponent for n = 1, first sum
        if v == 0 {
            // Degenerate block: constant zeta^(x dd) / (1 - zeta^(x dd))^2.
            let zx = C::zeta(n, x * q.dd);
            let one = C::from_rat(n, BigRational::one());
            let om_inv = one.c_sub(&zx).c_inv()?;
            let c = zx.c_mul(&om_inv).c_mul(&om_inv);
            if len > 0 {
                let signed = if sign < 0 { c.c_neg() } else { c };
                acc[0] = acc[0].c_add(&signed);
            }
            // m >= 1 blocks of both sums, exponents m n N/D.
            let mut nn = 1i64;
            while nn * step < prec {
                let mut m = 1i64;
                while m * nn * step < prec {
                    let e = (m * nn * step) as usize;
                    let w = C::zeta(n, nn * base_exp)
                        .c_add(&C::zeta(n, -nn * base_exp))
                        .c_scale(&rat_i64(sign * nn));
                    acc[e] = acc[e].c_add(&w);
                    m += 1;
                }
                nn += 1;
            }
        } else {
            // First sum: exponents n v + m n N/D, m >= 0.
            let mut nn = 1i64;
            while nn * v < prec {
                let mut m = 0i64;
                while nn * v + m * nn * step < prec {
                    let e = (nn * v + m * nn * step) as usize;
                    let w = C::zeta(n, nn * base_exp).c_scale(&rat_i64(sign * nn));
                    acc[e] = acc[e].c_add(&w);
                    m += 1;
                }
                nn += 1;
            }
            // Second sum: exponents -n v + m n N/D, m >= 1.
            let mut nn = 1i64;
            while nn * (step - v) < prec {
                let mut m = 1i64;
                while -nn * v + m * nn * step < prec {
                    let e = (-nn * v + m * nn * step) as usize;
                    let w = C::zeta(n, -nn * base_exp).c_scale(&rat_i64(sign * nn));
                    acc[e] = acc[e].c_add(&w);
                    m += 1;
                }
                nn += 1;
            }
        }
    }
    Ok(LaurentSeries::from_coeffs(tag, 0, prec, acc))
}

/// Public p-difference expansion over Q(zeta_N), in q_D units.
pub fn wp_diff(n: u32, q: &CuspClass, r: i64, s: i64, prec: i64) -> Result<LaurentSeries<CycNum>> {
    wp_diff_in::<CycNum>(n, q, r, s, prec)
}

/// Sign of a constant W_a (numerator and denominator p-differences agree up
/// to ordering): +1 for the aligned pairing, -1 for the swapped one.
fn constant_sign(a: &WVector) -> i64 {
    let n = a.n;
    let fold = |x: i64| {
        let r = modn(x, n);
        r.min(n - r)
    };
    let (p, qq) = (fold(a.a[0]), fold(a.a[1]));
    let (r, s) = (fold(a.a[2]), fold(a.a[3]));
    if p == r && qq == s {
        1
    } else {
        debug_assert!(p == s && qq == r);
        -1
    }
}

fn w_expansion_in<C: ZetaRing>(a: &WVector, q: &CuspClass, prec: i64) -> Result<LaurentSeries<C>> {
    let n = a.n;
    let tag = VarTag::new(n, q.d);
    if a.is_constant() {
        return Ok(LaurentSeries::constant(
            tag,
            C::from_rat(n, rat_i64(constant_sign(a))),
            i64::MAX / 4,
        ));
    }
    // Denominator valuations are bounded by N/(2D); pad so the quotient is
    // still good to `prec` and verify afterwards.
    let mut pad = (n / q.d) as i64 + 2;
    loop {
        let p_in = prec + pad;
        let num = wp_diff_in::<C>(n, q, a.a[0], a.a[1], p_in)?;
        let den = wp_diff_in::<C>(n, q, a.a[2], a.a[3], p_in)?;
        if den.is_zero() {
            return Err(Error::PrecisionInsufficient(format!(
                "denominator of W_{:?} vanishes to precision {p_in} at {}",
                a.a,
                q.label()
            )));
        }
        let w = num.mul(&den.inv()?)?;
        if w.prec() >= prec {
            return Ok(w.truncate(prec));
        }
        pad *= 2;
        if pad > 64 * (n as i64 + prec.abs() + 4) {
            return Err(Error::PrecisionInsufficient(format!(
                "W expansion at {} will not reach precision {prec}",
                q.label()
            )));
        }
    }
}

/// W_a expanded at a cusp class, in q_D units. Its valuation equals the
/// order formula of `modcurve::w_order`; the test suite asserts that
/// cross-module identity on random vectors.
pub fn w_expansion(a: &WVector, q: &CuspClass, prec: i64) -> Result<LaurentSeries<CycNum>> {
    w_expansion_in::<CycNum>(a, q, prec)
}

fn trace_expansion_in<C: ZetaRing>(
    expr: &ModFuncExpr,
    q: &CuspClass,
    prec: i64,
) -> Result<LaurentSeries<C>> {
    let n = expr.level;
    let tag = VarTag::new(n, q.d);
    // Products of two W's can lose up to ~N/D of precision; pad adaptively.
    let mut pad = (n / q.d) as i64 + 2;
    loop {
        let p_in = prec + pad;
        let mut total = LaurentSeries::constant(
            tag,
            C::from_rat(n, expr.constant.clone()),
            i64::MAX / 4,
        );
        for term in &expr.terms {
            let mut term_sum = LaurentSeries::zero(tag, i64::MAX / 4);
            for lambda in lambda_orbit(n) {
                let wa = w_expansion_in::<C>(&term.a.scaled(lambda), q, p_in)?;
                let prod = match &term.b {
                    Some(b) => {
                        let wb = w_expansion_in::<C>(&b.scaled(lambda), q, p_in)?;
                        wa.mul(&wb)?
                    }
                    None => wa,
                };
                term_sum = term_sum.add(&prod)?;
            }
            total = total.add(&term_sum.scale(&term.coeff))?;
        }
        if total.prec() >= prec {
            return Ok(total.truncate(prec));
        }
        pad *= 2;
        if pad > 64 * (n as i64 + prec.abs() + 4) {
            return Err(Error::PrecisionInsufficient(format!(
                "trace expansion at {} will not reach precision {prec}",
                q.label()
            )));
        }
    }
}

fn cache_key(expr: &ModFuncExpr, q: &CuspClass) -> (String, u32, i64, u32) {
    (expr.text(), expr.level, q.u, q.d)
}

type CycCache = HashMap<(String, u32, i64, u32), LaurentSeries<CycNum>>;
type RatCache = HashMap<(String, u32, i64, u32), LaurentSeries<Rational>>;

fn cyc_cache() -> &'static Mutex<CycCache> {
    static CACHE: OnceLock<Mutex<CycCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn rat_cache() -> &'static Mutex<RatCache> {
    static CACHE: OnceLock<Mutex<RatCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Trace expansion at a cusp class, rebased to the local parameter
/// q_D^width, with coefficients in Q(zeta_N). `prec` counts local-parameter
/// exponents. Cached per (expression, cusp); a higher-precision
/// recomputation replaces the cached entry.
pub fn trace_expansion(
    expr: &ModFuncExpr,
    q: &CuspClass,
    prec: i64,
) -> Result<LaurentSeries<CycNum>> {
    let key = cache_key(expr, q);
    if let Some(hit) = cyc_cache().lock().unwrap().get(&key) {
        if hit.prec() >= prec {
            return Ok(hit.truncate(prec));
        }
    }
    let raw = trace_expansion_in::<CycNum>(expr, q, prec * q.width as i64)?;
    let local = raw.rebase(q.width)?;
    debug_assert!(local.prec() >= prec);
    cyc_cache().lock().unwrap().insert(key, local.clone());
    Ok(local.truncate(prec))
}

/// Trace expansion at P = <1/1> over Q. The B-matrix entry dd is 0 there, so
/// every zeta power collapses and the computation stays rational; this is
/// the constructive form of the statement that expansions of Gamma_0(N)-
/// invariant functions at <1/1> have rational coefficients.
pub fn trace_expansion_at_p(expr: &ModFuncExpr, prec: i64) -> Result<LaurentSeries<Rational>> {
    let p = p_class(expr.level);
    let key = cache_key(expr, &p);
    if let Some(hit) = rat_cache().lock().unwrap().get(&key) {
        if hit.prec() >= prec {
            return Ok(hit.truncate(prec));
        }
    }
    let out = trace_expansion_in::<Rational>(expr, &p, prec)?;
    rat_cache().lock().unwrap().insert(key, out.clone());
    Ok(out.truncate(prec))
}

/// The distinguished cusp class P = <1/1>.
pub fn p_class(n: u32) -> CuspClass {
    let _ = n;
    CuspClass {
        u: 1,
        d: 1,
        width: 1,
        dd: 0,
    }
}

/// Expansion dispatch: the rational fast path at P (embedded into CycNum for
/// a uniform return type), the cyclotomic path elsewhere.
pub fn expansion_at(expr: &ModFuncExpr, q: &CuspClass, prec: i64) -> Result<LaurentSeries<CycNum>> {
    if q.is_p() {
        Ok(trace_expansion_at_p(expr, prec)?.to_cyc(expr.level))
    } else {
        trace_expansion(expr, q, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcurve::{cusps_gamma0, trace_order_bound, w_order};

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "T[5,1,2,1]",
            "-3 + T[5,1,2,1]",
            "T[4,1,3,1]*[5,1,2,1]",
            "1/2*T[6,1,3,1]*[7,1,2,1]",
            "-1/2*T[19,3,25,3]*[25,1,19,1]",
            "6 - T[4,2,10,2]*[10,1,4,1] - T[8,2,3,2]*[3,1,8,1]",
        ] {
            let n = 60; // valid level for all the vectors above
            let e = ModFuncExpr::parse(n, s).unwrap();
            let printed = e.text();
            let e2 = ModFuncExpr::parse(n, &printed).unwrap();
            assert_eq!(e, e2, "round trip failed for `{s}` -> `{printed}`");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(ModFuncExpr::parse(14, "T[5,1,2]").is_err());
        assert!(ModFuncExpr::parse(14, "T[5,1,2,1] +").is_err());
        assert!(ModFuncExpr::parse(14, "5 * 3").is_err());
        // entries divisible by N are invalid vectors
        assert!(ModFuncExpr::parse(14, "T[14,1,2,1]").is_err());
    }

    #[test]
    fn wp_diff_zero_for_congruent_args() {
        let p = p_class(14);
        let d = wp_diff(14, &p, 5, 19, 30).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn wp_diff_rejects_zero_residue() {
        let p = p_class(14);
        assert!(wp_diff(14, &p, 14, 1, 10).is_err());
    }

    #[test]
    fn wp_diff_leading_terms_at_p() {
        // wp_diff(5,1) at N=14, <1/1>. Hand oracle from the double sum with
        // dd = 0: the r-part contributes n q^(5n), the s-part -n q^n, and no
        // second-sum term lands below q^9. So through q^5:
        // -q - 2q^2 - 3q^3 - 4q^4 + (1 - 5) q^5.
        let p = p_class(14);
        let d = wp_diff_in::<Rational>(14, &p, 5, 1, 6).unwrap();
        assert_eq!(d.valuation(), 1);
        for (k, c) in [(1, -1), (2, -2), (3, -3), (4, -4), (5, -4)] {
            assert_eq!(d.coeff(k).unwrap(), rat_i64(c), "coefficient of q^{k}");
        }
    }

    #[test]
    fn constant_w_is_plus_minus_one() {
        let aligned = WVector::new(14, [5, 2, 5, 2]).unwrap();
        let w = w_expansion(&aligned, &p_class(14), 10).unwrap();
        assert_eq!(w.coeff(0).unwrap().as_rational().unwrap(), rat_i64(1));
        let swapped = WVector::new(14, [5, 2, 2, 5]).unwrap();
        let w = w_expansion(&swapped, &p_class(14), 10).unwrap();
        assert_eq!(w.coeff(0).unwrap().as_rational().unwrap(), rat_i64(-1));
    }

    #[test]
    fn w_valuation_matches_order_formula() {
        // a = [2,1,4,1] at N=7, <1/1>: min({2},{1}) - min({4}->3,{1}) = 0.
        let a = WVector::new(7, [2, 1, 4, 1]).unwrap();
        let w = w_expansion(&a, &p_class(7), 8).unwrap();
        assert_eq!(w.valuation(), w_order(&a, 1));
        assert_eq!(w.valuation(), 0);
    }

    #[test]
    fn w_valuation_property_across_cusps() {
        for (n, vecs) in [
            (14u32, vec![[5i64, 1, 2, 1], [4, 1, 3, 1], [3, 1, 6, 5]]),
            (15, vec![[7, 1, 3, 1], [2, 1, 7, 1]]),
        ] {
            for q in cusps_gamma0(n).unwrap() {
                for av in &vecs {
                    let a = WVector::new(n, *av).unwrap();
                    let w = w_expansion(&a, &q, 6).unwrap();
                    assert_eq!(
                        w.valuation(),
                        w_order(&a, q.d as i64),
                        "valuation mismatch for {av:?} at {} (N={n})",
                        q.label()
                    );
                }
            }
        }
    }

    #[test]
    fn n14_f1_expansion_first_terms() {
        // T[5,1,2,1] at <1/1> has leading coefficient -1 (the normalized
        // generator is its negative); magnitudes match the level-14 golden
        // series q^-2 + q^-1 + 2q + 2q^2 + 3q^3 + 4q^4 - 2q^5 ...
        let e = ModFuncExpr::parse(14, "T[5,1,2,1]").unwrap();
        let s = trace_expansion_at_p(&e, 6).unwrap();
        assert_eq!(s.valuation(), -2);
        let lead = s.coeff(-2).unwrap();
        let norm = s.scale(&(BigRational::one() / lead));
        for (k, c) in [(-2, 1), (-1, 1), (0, 0), (1, 2), (2, 2), (3, 3), (4, 4), (5, -2)] {
            assert_eq!(norm.coeff(k).unwrap(), rat_i64(c), "coefficient of q^{k}");
        }
    }

    #[test]
    fn trace_valuation_respects_bound() {
        let e = ModFuncExpr::parse(14, "T[4,1,3,1]*[5,1,2,1]").unwrap();
        let t = &e.terms[0];
        for q in cusps_gamma0(14).unwrap() {
            let s = trace_expansion(&e, &q, 4).unwrap();
            let bound = trace_order_bound(&t.a, t.b.as_ref(), q.d);
            // Bound is in q_D units; the expansion is in local units
            // (q_D^width), so compare in q_D units.
            assert!(
                s.valuation() * q.width as i64 >= bound,
                "bound {bound} violated at {}",
                q.label()
            );
        }
    }

    #[test]
    fn rebase_succeeds_on_width_4_cusp() {
        // N=16 <1/4> has width 4; the trace must land on that lattice.
        let e = ModFuncExpr::parse(16, "2 + 1/2*T[6,1,3,1]*[7,1,2,1]").unwrap();
        let q = cusps_gamma0(16)
            .unwrap()
            .into_iter()
            .find(|c| c.d == 4)
            .unwrap();
        assert_eq!(q.width, 4);
        let s = trace_expansion(&e, &q, 3).unwrap();
        assert_eq!(s.tag().unit, 4);
    }
}
