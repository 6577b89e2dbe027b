//! Exact polynomials: bivariate in (X, Y) and multivariate in F_1..F_k.
//!
//! Canonical form stores no zero terms; the term order is (deg_Y desc,
//! deg_X desc). Display clears denominators to a primitive integer
//! polynomial when asked via [`BivarPoly::canonical_integer`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{denom_lcm, numer_gcd, rational_str, Rational};
use crate::series::{Coeff, LaurentSeries, VarTag};
use crate::{Error, Result};

/// Exact polynomial in X and Y over Q. Keys are (deg_Y, deg_X).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = BivarPoly::zero();
        p.set(0, 0, c);
        p
    }

    pub fn one() -> Self {
        BivarPoly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        BivarPoly::monomial(0, 1, BigRational::one())
    }

    pub fn y() -> Self {
        BivarPoly::monomial(1, 0, BigRational::one())
    }

    pub fn monomial(deg_y: u32, deg_x: u32, c: Rational) -> Self {
        let mut p = BivarPoly::zero();
        p.set(deg_y, deg_x, c);
        p
    }

    fn set(&mut self, deg_y: u32, deg_x: u32, c: Rational) {
        if c.is_zero() {
            self.terms.remove(&(deg_y, deg_x));
        } else {
            self.terms.insert((deg_y, deg_x), c);
        }
    }

    pub fn coeff(&self, deg_y: u32, deg_x: u32) -> Rational {
        self.terms
            .get(&(deg_y, deg_x))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(_, dx)| dx).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(dy, _)| dy).max().unwrap_or(0)
    }

    /// Terms in canonical order (deg_Y desc, then deg_X desc).
    pub fn terms_desc(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().rev().map(|(&k, v)| (k, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            let c = out.coeff(k.0, k.1) + v;
            out.set(k.0, k.1, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BivarPoly::zero();
        for (&(ya, xa), ca) in &self.terms {
            for (&(yb, xb), cb) in &other.terms {
                let k = (ya + yb, xa + xb);
                let c = out.coeff(k.0, k.1) + ca * cb;
                out.set(k.0, k.1, c);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BivarPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        let mut out = BivarPoly::zero();
        for (&(dy, dx), c) in &self.terms {
            if dx > 0 {
                out.set(dy, dx - 1, c * BigRational::from_integer(BigInt::from(dx)));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = BivarPoly::zero();
        for (&(dy, dx), c) in &self.terms {
            if dy > 0 {
                out.set(dy - 1, dx, c * BigRational::from_integer(BigInt::from(dy)));
            }
        }
        out
    }

    /// Coefficient of Y^j as a univariate polynomial in X (ascending).
    pub fn y_coeff_poly(&self, j: u32) -> Vec<Rational> {
        let mut out = vec![BigRational::zero(); self.deg_x() as usize + 1];
        for (&(dy, dx), c) in &self.terms {
            if dy == j {
                out[dx as usize] = c.clone();
            }
        }
        while out.last().map_or(false, |c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Univariate-in-X content as ascending coefficients; None if Y occurs.
    pub fn as_univariate_x(&self) -> Option<Vec<Rational>> {
        if self.deg_y() > 0 {
            return None;
        }
        Some(self.y_coeff_poly(0))
    }

    pub fn from_univariate_x(coeffs: &[Rational]) -> Self {
        let mut p = BivarPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.set(0, i as u32, c.clone());
        }
        p
    }

    /// Evaluate on truncated series; `y` may be omitted for univariate use.
    pub fn eval_series<C: Coeff>(
        &self,
        tag: VarTag,
        x: &LaurentSeries<C>,
        y: Option<&LaurentSeries<C>>,
        proto: &C,
    ) -> Result<LaurentSeries<C>> {
        let one = proto.c_zero().c_from_rational(&BigRational::one());
        // Cache powers of x and y as needed.
        let mut x_pows: Vec<LaurentSeries<C>> =
            vec![LaurentSeries::constant(tag, one.clone(), i64::MAX / 4)];
        for _ in 0..self.deg_x() {
            let last = x_pows.last().unwrap();
            x_pows.push(last.mul(x)?);
        }
        let mut y_pows: Vec<LaurentSeries<C>> =
            vec![LaurentSeries::constant(tag, one, i64::MAX / 4)];
        if let Some(y) = y {
            for _ in 0..self.deg_y() {
                let last = y_pows.last().unwrap();
                y_pows.push(last.mul(y)?);
            }
        } else if self.deg_y() > 0 {
            return Err(Error::SingularSystem(
                "bivariate polynomial evaluated without a Y series".into(),
            ));
        }
        let mut acc = LaurentSeries::zero(tag, i64::MAX / 4);
        for (&(dy, dx), c) in &self.terms {
            let term = x_pows[dx as usize]
                .mul(&y_pows[dy as usize])?
                .scale(c);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Substitute polynomials for X and Y.
    pub fn compose(&self, x_sub: &BivarPoly, y_sub: &BivarPoly) -> BivarPoly {
        let mut x_pows = vec![BivarPoly::one()];
        for _ in 0..self.deg_x() {
            x_pows.push(x_pows.last().unwrap().mul(x_sub));
        }
        let mut y_pows = vec![BivarPoly::one()];
        for _ in 0..self.deg_y() {
            y_pows.push(y_pows.last().unwrap().mul(y_sub));
        }
        let mut acc = BivarPoly::zero();
        for (&(dy, dx), c) in &self.terms {
            acc = acc.add(&x_pows[dx as usize].mul(&y_pows[dy as usize]).scale(c));
        }
        acc
    }

    pub fn eval_point(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = BigRational::zero();
        for (&(dy, dx), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..dx {
                t *= x;
            }
            for _ in 0..dy {
                t *= y;
            }
            acc += t;
        }
        acc
    }

    /// Primitive integer form: (p, s) with p = s * self, p having integer
    /// coefficients with content 1 and positive leading term in the
    /// canonical order.
    pub fn canonical_integer(&self) -> (Self, Rational) {
        if self.is_zero() {
            return (BivarPoly::zero(), BigRational::one());
        }
        let l = denom_lcm(self.terms.values());
        let cleared: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = numer_gcd(cleared.iter());
        let mut s = BigRational::new(l, g);
        let lead = self.terms_desc().next().unwrap().1;
        if (lead * &s).is_negative() {
            s = -s;
        }
        (self.scale(&s), s)
    }

    /// Canonical text: term order (deg_Y desc, deg_X desc), explicit `*`.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for ((dy, dx), c) in self.terms_desc() {
            let neg = c.is_negative();
            let mag = c.abs();
            let mut body = String::new();
            let unit = mag.is_one();
            if !unit || (dx == 0 && dy == 0) {
                body.push_str(&rational_str(&mag));
            }
            let mut push_var = |s: String| {
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(&s);
            };
            if dy > 0 {
                push_var(if dy == 1 { "Y".into() } else { format!("Y^{dy}") });
            }
            if dx > 0 {
                push_var(if dx == 1 { "X".into() } else { format!("X^{dx}") });
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Parse a polynomial in X and Y (also accepts `x`, `y`).
    pub fn parse(input: &str) -> Result<Self> {
        let m = MultiPoly::parse(input, &["X", "Y"])?;
        Ok(m.to_bivar())
    }

    pub fn to_multi(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= 2 || self.deg_y() == 0);
        let mut out = MultiPoly::zero(nvars);
        for (&(dy, dx), c) in &self.terms {
            let mut e = vec![0u16; nvars];
            e[0] = dx as u16;
            if dy > 0 {
                e[1] = dy as u16;
            }
            out.add_term(e, c.clone());
        }
        out
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Sparse polynomial in F_1..F_k over Q; exponent vectors are the keys.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[idx] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        let cur = self.terms.get(&exps).cloned().unwrap_or_else(BigRational::zero) + c;
        if cur.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, cur);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn max_deg(&self, var: usize) -> u16 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of var^power as a polynomial in the remaining variables
    /// (same variable count, exponent of `var` zeroed).
    pub fn coeff_of(&self, var: usize, power: u16) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Evaluate on series (one per variable).
    pub fn eval_series<C: Coeff>(
        &self,
        tag: VarTag,
        vars: &[LaurentSeries<C>],
        proto: &C,
    ) -> Result<LaurentSeries<C>> {
        assert_eq!(vars.len(), self.nvars);
        let one = proto.c_zero().c_from_rational(&BigRational::one());
        let mut pows: Vec<Vec<LaurentSeries<C>>> = Vec::with_capacity(self.nvars);
        for (v, s) in vars.iter().enumerate() {
            let d = self.max_deg(v) as usize;
            let mut ps = vec![LaurentSeries::constant(tag, one.clone(), i64::MAX / 4)];
            for _ in 0..d {
                ps.push(ps.last().unwrap().mul(s)?);
            }
            pows.push(ps);
        }
        let mut acc = LaurentSeries::zero(tag, i64::MAX / 4);
        for (e, c) in &self.terms {
            let mut term = LaurentSeries::constant(tag, one.clone(), i64::MAX / 4);
            for (v, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&pows[v][exp as usize])?;
                }
            }
            acc = acc.add(&term.scale(c))?;
        }
        Ok(acc)
    }

    pub fn eval_points(&self, vals: &[Rational]) -> Rational {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= &vals[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Collapse to (X, Y) = (F_1, F_2); requires no variable beyond the
    /// second to occur.
    pub fn to_bivar(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (e, c) in &self.terms {
            assert!(
                e.iter().skip(2).all(|&x| x == 0),
                "higher generators present; substitute H_i first"
            );
            let dx = e[0] as u32;
            let dy = e.get(1).copied().unwrap_or(0) as u32;
            let cur = out.coeff(dy, dx) + c;
            out.set(dy, dx, cur);
        }
        out
    }

    /// Text with the given variable names, highest total degree first.
    pub fn text(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            let total: i64 = e.iter().map(|&x| x as i64).sum();
            let rev: Vec<i64> = e.iter().rev().map(|&x| -(x as i64)).collect();
            (-total, rev)
        });
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let mag = c.abs();
            let mut body = String::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                body.push_str(&rational_str(&mag));
            }
            for (v, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(names[v]);
                if exp > 1 {
                    body.push_str(&format!("^{exp}"));
                }
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Parse `+`, `-`, `*`, `^`, parentheses, rational literals, and the
    /// given variable names (case-insensitive).
    pub fn parse(input: &str, names: &[&str]) -> Result<Self> {
        let mut p = PolyParser {
            chars: input.chars().collect(),
            pos: 0,
            names: names.iter().map(|s| s.to_ascii_uppercase()).collect(),
            input,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("F{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.text(&refs))
    }
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: Vec<String>,
    input: &'a str,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at position {} in `{}`",
            self.pos, self.input
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(&-BigRational::one());
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // Implicit multiplication before `(` or a variable letter.
                Some('(') => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let mut acc = MultiPoly::constant(base.nvars, BigRational::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("exponent overflow"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let nvars = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().map_or(false, |ch| ch.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let num: BigInt = s.parse().unwrap();
                if self.peek() == Some('/') {
                    // Rational literal only when followed by digits.
                    let save = self.pos;
                    self.pos += 1;
                    let dstart = self.pos;
                    while self.peek().map_or(false, |ch| ch.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    if self.pos == dstart {
                        self.pos = save;
                    } else {
                        let ds: String = self.chars[dstart..self.pos].iter().collect();
                        let den: BigInt = ds.parse().unwrap();
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        return Ok(MultiPoly::constant(nvars, BigRational::new(num, den)));
                    }
                }
                Ok(MultiPoly::constant(nvars, BigRational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                // Longest-prefix match against the variable names, so that
                // juxtapositions like `YX` or `F1F5` read as products.
                let rest: String = self.chars[self.pos..]
                    .iter()
                    .collect::<String>()
                    .to_ascii_uppercase();
                let mut hit: Option<(usize, usize)> = None; // (idx, len)
                for (idx, name) in self.names.iter().enumerate() {
                    if rest.starts_with(name.as_str())
                        && hit.map_or(true, |(_, l)| name.len() > l)
                    {
                        hit = Some((idx, name.len()));
                    }
                }
                match hit {
                    Some((idx, len)) => {
                        self.pos += len;
                        Ok(MultiPoly::var(nvars, idx))
                    }
                    None => Err(self.err(&format!("unknown variable starting at `{c}`"))),
                }
            }
            _ => Err(self.err("expected atom")),
        }
    }
}

/// Monic gcd of univariate rational polynomials (ascending coefficients).
pub fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !r1.is_empty() {
        let (_, rem) = uni_divmod(&r0, &r1);
        r0 = r1;
        r1 = rem;
    }
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut() {
            *c /= &lead;
        }
    }
    r0
}

/// Quotient and remainder of univariate division.
pub fn uni_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
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

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i64};

    #[test]
    fn parse_matches_hand_built() {
        let p = BivarPoly::parse("Y^2 - X^3 + X*Y - 6*X^2 - Y - 18*X - 12").unwrap();
        assert_eq!(p.coeff(2, 0), rat_i64(1));
        assert_eq!(p.coeff(0, 3), rat_i64(-1));
        assert_eq!(p.coeff(1, 1), rat_i64(1));
        assert_eq!(p.coeff(0, 2), rat_i64(-6));
        assert_eq!(p.coeff(1, 0), rat_i64(-1));
        assert_eq!(p.coeff(0, 1), rat_i64(-18));
        assert_eq!(p.coeff(0, 0), rat_i64(-12));
    }

    #[test]
    fn parse_factored_products() {
        let p = BivarPoly::parse("(X-3)^3*(X^3-9*X^2+3*X-3)^3").unwrap();
        assert_eq!(p.deg_x(), 12);
        assert_eq!(p.coeff(0, 12), rat_i64(1));
        assert_eq!(p.coeff(0, 0), rat_i64(27 * 27)); // (-3)^3 * (-3)^3
        // same thing written with implicit multiplication
        let q = BivarPoly::parse("(X-3)^3(X^3-9X^2+3X-3)^3").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn text_round_trip() {
        let p = BivarPoly::parse("Y^2 + X*Y - Y - X^3 - 6*X^2 - 18*X - 12").unwrap();
        let q = BivarPoly::parse(&p.text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn canonical_integer_clears_and_signs() {
        let p = BivarPoly::parse("Y^2").unwrap().scale(&rat(-2, 3)).add(
            &BivarPoly::parse("X").unwrap().scale(&rat(4, 9)),
        );
        let (q, s) = p.canonical_integer();
        // -2/3 Y^2 + 4/9 X -> canonical 3 Y^2 - 2 X (leading positive)
        assert_eq!(q.coeff(2, 0), rat_i64(3));
        assert_eq!(q.coeff(0, 1), rat_i64(-2));
        assert_eq!(p.scale(&s), q);
    }

    #[test]
    fn multipoly_c12_shape() {
        let c12 = MultiPoly::parse("-28F1+7F3+6461/3+F5", &["F1", "F2", "F3", "F4", "F5"]).unwrap();
        assert_eq!(c12.eval_points(&vec![rat_i64(0); 5]), rat(6461, 3));
        let t = c12.text(&["F1", "F2", "F3", "F4", "F5"]);
        let back = MultiPoly::parse(&t, &["F1", "F2", "F3", "F4", "F5"]).unwrap();
        assert_eq!(c12, back);
    }

    #[test]
    fn uni_gcd_cancels_common_factor() {
        // (x-1)(x-2) and (x-1)(x+3): gcd = x - 1
        let a = BivarPoly::parse("(X-1)(X-2)").unwrap().as_univariate_x().unwrap();
        let b = BivarPoly::parse("(X-1)(X+3)").unwrap().as_univariate_x().unwrap();
        let g = uni_gcd(&a, &b);
        assert_eq!(g, vec![rat_i64(-1), rat_i64(1)]);
    }
}
