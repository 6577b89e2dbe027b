//! The modular invariant: its q-expansion, its expansion at every cusp
//! class, the cusp-killing factors, and the representation
//! J = P_N(F_1,..,F_{g+1}) / prod_Q G_Q^{m_Q}.
//!
//! Killers: at a cusp Q != P the constant term c of F_1 is an algebraic
//! number in Q(zeta_N); the minimal polynomial M of c over Q gives the
//! rational factor G = M(F_1), which vanishes at Q and at every cusp whose
//! F_1-constant is conjugate to c. Grouping conjugate cusps under one factor
//! with a single exponent m = max over the group of
//! ceil(pole_J / zero_order) reproduces the classical univariate
//! denominators, including the irrational-constant cases where no rational
//! affine form vanishes at a single cusp alone. A full affine-span kernel
//! search over {1, F_1, .., F_{g+1}} remains as a fallback when F_1 fails to
//! separate the cusp from the constants.
//!
//! The pole order of J at <u/D> in local-parameter units is N/(D*width):
//! J is invariant under all of SL_2(Z), so its expansion at any cusp is the
//! plain j-series with q = q_D^(N/D), rebased to the local parameter
//! q_D^width. The test suite cross-checks this against computed expansions.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{euler_phi, CycNum, Rational};
use crate::modcurve::CuspClass;
use crate::relations::{reduce_to_poly, solve_exact, uni_divmod, uni_gcd, BivarPoly, MultiPoly};
use crate::series::{LaurentSeries, VarTag};
use crate::weier::p_class;
use crate::{Error, Result};

/// Coefficients c_k of j = q^-1 + 744 + 196884 q + ..., for k = -1..count-2.
fn j_coeffs(count: usize) -> Vec<BigInt> {
    static MEMO: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = memo.lock().unwrap();
    if guard.len() < count {
        *guard = compute_j_coeffs(count.max(64));
    }
    guard[..count].to_vec()
}

/// j = E_4^3 / Delta with E_4 from sigma_3 divisor sums and Delta as
/// q * (Euler product)^24, the Euler product by the pentagonal-number
/// recursion.
fn compute_j_coeffs(count: usize) -> Vec<BigInt> {
    let prec = count as i64;
    let tag = VarTag::new(1, 1);
    let e4 = LaurentSeries::from_coeffs(tag, 0, prec, e4_coeffs(prec as usize));
    let euler = LaurentSeries::from_coeffs(tag, 0, prec, euler_product_coeffs(prec as usize));
    let delta_over_q = euler.pow(24).unwrap().truncate(prec);
    let j_times_q = e4
        .pow(3)
        .unwrap()
        .truncate(prec)
        .mul(&delta_over_q.inv().unwrap())
        .unwrap();
    (0..count)
        .map(|k| {
            j_times_q
                .coeff(k as i64)
                .map(|c| c.to_integer())
                .unwrap_or_else(BigInt::zero)
        })
        .collect()
}

fn e4_coeffs(len: usize) -> Vec<Rational> {
    let mut sigma3 = vec![BigInt::zero(); len];
    for d in 1..len {
        let d3 = BigInt::from(d) * BigInt::from(d) * BigInt::from(d);
        let mut m = d;
        while m < len {
            sigma3[m] += &d3;
            m += d;
        }
    }
    let mut out = vec![BigRational::zero(); len];
    out[0] = BigRational::one();
    for (k, s) in sigma3.iter().enumerate().skip(1) {
        out[k] = BigRational::from_integer(s * BigInt::from(240));
    }
    out
}

/// prod (1 - q^n) = sum over all integers k of (-1)^k q^(k(3k-1)/2).
fn euler_product_coeffs(len: usize) -> Vec<Rational> {
    let mut out = vec![BigRational::zero(); len];
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for (idx, kk) in [k, -k].into_iter().enumerate() {
            if idx == 1 && k == 0 {
                continue;
            }
            let e = kk * (3 * kk - 1) / 2;
            if e < len as i64 {
                hit = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                out[e as usize] += BigRational::from_integer(BigInt::from(sign));
            }
        }
        if !hit && k > 2 {
            break;
        }
        k += 1;
    }
    out
}

/// q-expansion of j in the plain variable q = exp(2 pi i tau), to exponents
/// below `prec`.
pub fn j_expansion(prec: i64) -> LaurentSeries<Rational> {
    assert!(prec >= 2);
    let count = (prec + 1).max(0) as usize;
    let coeffs = j_coeffs(count)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    LaurentSeries::from_coeffs(VarTag::new(1, 1), -1, prec, coeffs)
}

/// Expansion of J at a cusp class of level N, in local-parameter units
/// (q_D^width): the plain j-series re-indexed by q = q_D^(N/D). The pole
/// order is N/(D*width).
pub fn j_expansion_at(n: u32, q: &CuspClass, prec: i64) -> LaurentSeries<Rational> {
    let f = (n / (q.d * q.width)) as i64;
    debug_assert!(f >= 1);
    let tag = VarTag {
        n,
        d: q.d,
        unit: q.width,
    };
    let count = ((prec + f - 1).div_euclid(f) + 2).max(2) as usize;
    let cs = j_coeffs(count);
    let len = ((count as i64 - 1) * f + 1).max(0) as usize;
    let mut coeffs = vec![BigRational::zero(); len];
    for (k, c) in cs.iter().enumerate() {
        let idx = k as i64 * f; // index 0 holds exponent -f
        if (idx as usize) < coeffs.len() {
            coeffs[idx as usize] = BigRational::from_integer(c.clone());
        }
    }
    LaurentSeries::from_coeffs(tag, -f, prec, coeffs)
}

/// A cusp-killing factor attached to one cusp.
#[derive(Clone, Debug)]
pub struct CuspKiller {
    pub cusp: CuspClass,
    /// Rational polynomial in the generators vanishing at the cusp; the
    /// minimal-polynomial route produces a polynomial in F_1 only.
    pub g: MultiPoly,
    /// Order of vanishing at the cusp, in local-parameter units.
    pub zero_order: i64,
    /// Pole order of J at the cusp, in local-parameter units.
    pub pole_j: i64,
    /// Exponent required by this cusp alone: ceil(pole_j / zero_order).
    pub m_required: u32,
}

/// The J-representation: per-cusp killers, the deduplicated factor list
/// with final exponents, and P_N with J = P_N(F_1..F_{g+1}) / prod G^m.
#[derive(Clone, Debug)]
pub struct JRepresentation {
    pub killers: Vec<CuspKiller>,
    pub groups: Vec<(MultiPoly, u32)>,
    pub p_n: MultiPoly,
    /// Collapsed R_N for g <= 1.
    pub collapsed: Option<CollapsedRn>,
}

/// R_N as a fraction with univariate denominator: num[k] holds the Y^k
/// coefficient as an ascending univariate polynomial in X.
#[derive(Clone, Debug)]
pub struct CollapsedRn {
    pub num: Vec<Vec<Rational>>,
    pub den: Vec<Rational>,
    /// Factored display of the denominator when it is exactly the killer
    /// product (no cancellation happened).
    pub den_factors: Option<Vec<(BivarPoly, u32)>>,
}

/// Minimal polynomial over Q of an element of Q(zeta_N), monic, ascending.
pub fn minimal_polynomial(c: &CycNum) -> Vec<Rational> {
    let phi = euler_phi(c.level()) as usize;
    let mut pows: Vec<CycNum> = vec![CycNum::one(c.level())];
    for k in 1..=phi {
        let next = pows[k - 1].mul(c);
        pows.push(next);
    }
    for deg in 1..=phi {
        // solve c^deg = sum_{i<deg} x_i c^i over Q
        let a: Vec<Vec<Rational>> = (0..phi)
            .map(|row| (0..deg).map(|i| pows[i].coeffs()[row].clone()).collect())
            .collect();
        let b: Vec<Rational> = (0..phi)
            .map(|row| pows[deg].coeffs()[row].clone())
            .collect();
        if let Ok(x) = solve_exact(&a, &b) {
            let mut poly: Vec<Rational> = x.into_iter().map(|v| -v).collect();
            poly.push(BigRational::one());
            return poly;
        }
    }
    unreachable!("every element of Q(zeta_N) has degree at most phi(N)")
}

fn div_ceil_i64(a: i64, b: i64) -> i64 {
    debug_assert!(a >= 0 && b > 0);
    (a + b - 1) / b
}

fn eval_multi_at(
    p: &MultiPoly,
    basis: &[LaurentSeries<CycNum>],
    n: u32,
) -> Result<LaurentSeries<CycNum>> {
    p.eval_series(basis[0].tag(), basis, &CycNum::zero(n))
}

/// Find the killer for a cusp Q != P from the local-unit expansions of
/// F_1..F_{g+1} at Q.
pub fn find_cusp_killer(
    n: u32,
    q: &CuspClass,
    basis_at_q: &[LaurentSeries<CycNum>],
    pole_j: i64,
) -> Result<CuspKiller> {
    assert!(!q.is_p());
    let nvars = basis_at_q.len();
    let f1 = &basis_at_q[0];
    if f1.valuation() < 0 {
        return Err(Error::Stage {
            stage: "find_cusp_killer",
            message: format!("F1 has a pole at {}", q.label()),
        });
    }
    let c = f1.coeff(0).unwrap_or_else(|| CycNum::zero(n));
    let minpoly = minimal_polynomial(&c);
    let mut g_multi = MultiPoly::zero(nvars);
    for (k, coeff) in minpoly.iter().enumerate() {
        let mut e = vec![0u16; nvars];
        e[0] = k as u16;
        g_multi.add_term(e, coeff.clone());
    }
    let series = eval_multi_at(&g_multi, basis_at_q, n)?;
    // A to-precision-zero evaluation means the zero order exceeds anything
    // the pole of J requires; the exponent 1 then suffices.
    let zero_order = if series.is_zero() {
        series.prec()
    } else {
        series.valuation()
    };
    if zero_order >= 1 {
        return Ok(CuspKiller {
            cusp: *q,
            g: g_multi,
            zero_order,
            pole_j,
            m_required: div_ceil_i64(pole_j, zero_order) as u32,
        });
    }
    affine_kernel_killer(n, q, basis_at_q, pole_j)
}

/// Kernel-search fallback: rational affine forms over {1, F_1..F_{g+1}}
/// with the largest achievable valuation at Q.
fn affine_kernel_killer(
    n: u32,
    q: &CuspClass,
    basis_at_q: &[LaurentSeries<CycNum>],
    pole_j: i64,
) -> Result<CuspKiller> {
    let nvars = basis_at_q.len();
    let phi = euler_phi(n) as usize;
    let max_target = basis_at_q
        .iter()
        .map(|s| s.prec())
        .min()
        .unwrap_or(1)
        .max(2)
        - 1;
    let mut best: Option<Vec<Rational>> = None;
    for target in 1..=max_target {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for e in 0..target {
            for comp in 0..phi {
                let mut row = Vec::with_capacity(nvars + 1);
                row.push(if e == 0 && comp == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                for s in basis_at_q {
                    let c = s.coeff(e).unwrap_or_else(|| CycNum::zero(n));
                    row.push(c.coeffs()[comp].clone());
                }
                rows.push(row);
            }
        }
        match crate::relations::kernel_basis(&rows).into_iter().next() {
            Some(v) => best = Some(v),
            None => break,
        }
    }
    let coeffs = best.ok_or(Error::NoKiller { u: q.u, d: q.d })?;
    let mut g = MultiPoly::constant(nvars, coeffs[0].clone());
    for (i, c) in coeffs[1..].iter().enumerate() {
        g = g.add(&MultiPoly::var(nvars, i).scale(c));
    }
    let series = eval_multi_at(&g, basis_at_q, n)?;
    if series.is_zero() || series.valuation() < 1 {
        return Err(Error::NoKiller { u: q.u, d: q.d });
    }
    let zero_order = series.valuation();
    Ok(CuspKiller {
        cusp: *q,
        g,
        zero_order,
        pole_j,
        m_required: div_ceil_i64(pole_j, zero_order) as u32,
    })
}

/// Compute the per-cusp killers and the deduplicated factor list with
/// exponents, and verify that J * prod G^m is regular at every cusp != P.
pub fn plan_killers(
    n: u32,
    basis_at: &BTreeMap<CuspClass, Vec<LaurentSeries<CycNum>>>,
) -> Result<(Vec<CuspKiller>, Vec<(MultiPoly, u32)>)> {
    let mut killers: Vec<CuspKiller> = Vec::new();
    for (q, basis) in basis_at {
        let pole_j = (n / (q.d * q.width)) as i64;
        killers.push(find_cusp_killer(n, q, basis, pole_j)?);
    }

    // One factor per distinct polynomial; exponent = max group requirement.
    let mut groups: Vec<(MultiPoly, u32)> = Vec::new();
    for k in &killers {
        match groups.iter_mut().find(|(g0, _)| *g0 == k.g) {
            Some((_, m)) => *m = (*m).max(k.m_required),
            None => groups.push((k.g.clone(), k.m_required)),
        }
    }

    // Membership gate: after multiplying, J prod G^m must be regular at
    // every cusp != P. The per-cusp requirement already guarantees it; the
    // loop only exists to surface (and repair) any measured shortfall.
    for _round in 0..8 {
        let mut all_ok = true;
        for (q, basis) in basis_at {
            let pole_j = (n / (q.d * q.width)) as i64;
            let mut total = -pole_j;
            for (g0, m) in &groups {
                let s = eval_multi_at(g0, basis, n)?;
                let v = if s.is_zero() {
                    s.prec()
                } else {
                    s.valuation()
                };
                total += v * (*m as i64);
            }
            if total < 0 {
                all_ok = false;
                let own = killers.iter().position(|k| k.cusp == *q).unwrap();
                let gq = killers[own].g.clone();
                for (g0, m) in groups.iter_mut() {
                    if *g0 == gq {
                        *m += 1;
                    }
                }
            }
        }
        if all_ok {
            return Ok((killers, groups));
        }
    }
    Err(Error::Stage {
        stage: "plan_killers",
        message: "killer exponents failed to stabilize".into(),
    })
}

/// Assemble the J-representation from the generator system.
///
/// `basis_p`: F_1..F_{g+1} at P (rational, monic, pole orders g+1..2g+1);
/// `basis_at`: the same functions at every cusp != P, local units;
/// `min_eq`: the minimal equation, needed for the genus-1 collapse.
pub fn represent_j(
    n: u32,
    g: u32,
    basis_p: &[LaurentSeries<Rational>],
    basis_at: &BTreeMap<CuspClass, Vec<LaurentSeries<CycNum>>>,
    min_eq: Option<&BivarPoly>,
) -> Result<JRepresentation> {
    let nvars = basis_p.len();
    assert_eq!(nvars as u32, g + 1);
    let (killers, groups) = plan_killers(n, basis_at)?;

    // Assemble J * prod G^m at P and reduce to a polynomial in the basis.
    let tag = basis_p[0].tag();
    let pole_total = n as i64 + groups_pole_at_p(&groups, g);
    let have = basis_p.iter().map(|s| s.prec()).min().unwrap_or(0);
    if have < 2 {
        return Err(Error::PrecisionInsufficient(
            "P-expansions carry no positive-exponent terms".into(),
        ));
    }
    let j_p = j_expansion_at(n, &p_class(n), have + pole_total);
    let mut prod = j_p;
    for (g0, m) in &groups {
        let gs = g0.eval_series(tag, basis_p, &BigRational::zero())?;
        prod = prod.mul(&gs.pow(*m)?)?;
    }
    if prod.prec() < 2 {
        return Err(Error::PrecisionInsufficient(format!(
            "J-assembly retains precision {}; P-expansions need at least {} exponents",
            prod.prec(),
            pole_total + 2
        )));
    }
    let p_n = reduce_to_poly(&prod, basis_p, g).map_err(|e| Error::Stage {
        stage: "represent_j",
        message: format!("reduction of J * prod G^m failed: {e}"),
    })?;

    let collapsed = if g == 0 {
        Some(collapse_genus0(&p_n, &groups)?)
    } else if g == 1 {
        let eq = min_eq.ok_or_else(|| Error::Stage {
            stage: "represent_j",
            message: "genus-1 collapse needs the minimal equation".into(),
        })?;
        Some(collapse_genus1(&p_n, &groups, eq)?)
    } else {
        None
    };

    Ok(JRepresentation {
        killers,
        groups,
        p_n,
        collapsed,
    })
}

/// Total pole order at P contributed by the killer product.
pub fn groups_pole_at_p(groups: &[(MultiPoly, u32)], g: u32) -> i64 {
    groups
        .iter()
        .map(|(g0, m)| {
            let deg: i64 = g0
                .terms()
                .map(|(e, _)| {
                    e.iter()
                        .enumerate()
                        .map(|(v, &x)| (g as i64 + 1 + v as i64) * x as i64)
                        .sum()
                })
                .max()
                .unwrap_or(0);
            deg * *m as i64
        })
        .sum()
}

fn groups_as_univariate(groups: &[(MultiPoly, u32)]) -> Result<Vec<(Vec<Rational>, u32)>> {
    groups
        .iter()
        .map(|(g0, m)| {
            let mut uni: Vec<Rational> = vec![];
            for (e, c) in g0.terms() {
                if e[1..].iter().any(|&x| x != 0) {
                    return Err(Error::Stage {
                        stage: "represent_j",
                        message: "killer involves generators beyond F_1; no univariate denominator"
                            .into(),
                    });
                }
                let k = e[0] as usize;
                if uni.len() <= k {
                    uni.resize(k + 1, BigRational::zero());
                }
                uni[k] = c.clone();
            }
            Ok((uni, *m))
        })
        .collect()
}

fn uni_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn uni_pow(a: &[Rational], m: u32) -> Vec<Rational> {
    let mut acc = vec![BigRational::one()];
    for _ in 0..m {
        acc = uni_mul(&acc, a);
    }
    acc
}

fn collapse_genus0(p_n: &MultiPoly, groups: &[(MultiPoly, u32)]) -> Result<CollapsedRn> {
    let mut num: Vec<Rational> = vec![];
    for (e, c) in p_n.terms() {
        let k = e[0] as usize;
        if num.len() <= k {
            num.resize(k + 1, BigRational::zero());
        }
        num[k] = c.clone();
    }
    let unis = groups_as_univariate(groups)?;
    let mut den = vec![BigRational::one()];
    for (u, m) in &unis {
        den = uni_mul(&den, &uni_pow(u, *m));
    }
    // Lowest terms: an over-killed cusp would otherwise leave a common
    // factor between numerator and denominator.
    let gcd = uni_gcd(&num, &den);
    let (num, den, cancelled) = if gcd.len() > 1 {
        let (qn, rn) = uni_divmod(&num, &gcd);
        let (qd, rd) = uni_divmod(&den, &gcd);
        debug_assert!(rn.is_empty() && rd.is_empty());
        (qn, qd, true)
    } else {
        (num, den, false)
    };
    let den_factors = if cancelled {
        None
    } else {
        Some(
            unis.iter()
                .map(|(u, m)| (BivarPoly::from_univariate_x(u), *m))
                .collect(),
        )
    };
    Ok(CollapsedRn {
        num: vec![num],
        den,
        den_factors,
    })
}

fn collapse_genus1(
    p_n: &MultiPoly,
    groups: &[(MultiPoly, u32)],
    min_eq: &BivarPoly,
) -> Result<CollapsedRn> {
    let mut p = BivarPoly::zero();
    for (e, c) in p_n.terms() {
        p = p.add(&BivarPoly::monomial(e[1] as u32, e[0] as u32, c.clone()));
    }
    // Rewrite Y^2 = -(min_eq - Y^2) until deg_Y <= 1.
    let rest = min_eq.sub(&BivarPoly::monomial(2, 0, BigRational::one()));
    while p.deg_y() >= 2 {
        let dy = p.deg_y();
        let coeff = BivarPoly::from_univariate_x(&p.y_coeff_poly(dy));
        let lead = coeff.mul(&BivarPoly::monomial(dy, 0, BigRational::one()));
        p = p.sub(&lead);
        let repl = coeff
            .mul(&BivarPoly::monomial(dy - 2, 0, BigRational::one()))
            .mul(&rest.neg());
        p = p.add(&repl);
    }
    let unis = groups_as_univariate(groups)?;
    let mut den = vec![BigRational::one()];
    for (u, m) in &unis {
        den = uni_mul(&den, &uni_pow(u, *m));
    }
    Ok(CollapsedRn {
        num: vec![p.y_coeff_poly(0), p.y_coeff_poly(1)],
        den,
        den_factors: Some(
            unis.iter()
                .map(|(u, m)| (BivarPoly::from_univariate_x(u), *m))
                .collect(),
        ),
    })
}

/// Exact j-value at a point of the plane model.
#[derive(Clone, Debug, PartialEq)]
pub enum JValue {
    Value(Rational),
    /// The denominator vanishes to higher order than the numerator along
    /// the curve: the point corresponds to a cusp (j = infinity).
    Cusp,
    /// Singular point of the plane model; the representation does not
    /// determine j there.
    Undefined,
}

/// Evaluate R_N at a point (x0, y0) of F_N = 0 (genus >= 1). Removable 0/0
/// is resolved by expanding numerator and denominator along a local
/// parameter of the curve branch (Newton lift of the implicit coordinate).
pub fn evaluate_j(
    min_eq: &BivarPoly,
    rn: &CollapsedRn,
    x0: &Rational,
    y0: &Rational,
) -> Result<JValue> {
    if !min_eq.eval_point(x0, y0).is_zero() {
        return Err(Error::PointNotOnCurve(
            crate::exact::rational_str(x0),
            crate::exact::rational_str(y0),
        ));
    }
    let fy = min_eq.partial_y().eval_point(x0, y0);
    let fx = min_eq.partial_x().eval_point(x0, y0);
    let deg_bound =
        (rn.den.len() + rn.num.iter().map(|c| c.len()).max().unwrap_or(1)) as i64 + 8;
    let tag = VarTag { n: 0, d: 0, unit: 1 };
    let prec = deg_bound;
    let (x_t, y_t): (LaurentSeries<Rational>, LaurentSeries<Rational>) = if !fy.is_zero() {
        let x_t =
            LaurentSeries::from_coeffs(tag, 0, prec, vec![x0.clone(), BigRational::one()]);
        let y_t = newton_lift(min_eq, &x_t, y0, prec, true)?;
        (x_t, y_t)
    } else if !fx.is_zero() {
        let y_t =
            LaurentSeries::from_coeffs(tag, 0, prec, vec![y0.clone(), BigRational::one()]);
        let x_t = newton_lift(min_eq, &y_t, x0, prec, false)?;
        (x_t, y_t)
    } else {
        return Ok(JValue::Undefined);
    };
    let num = eval_univariate_series_sum(&rn.num, &x_t, &y_t)?;
    let den = eval_univariate_series(&rn.den, &x_t)?;
    let ord = |s: &LaurentSeries<Rational>| {
        if s.is_zero() {
            s.prec()
        } else {
            s.valuation()
        }
    };
    let (vn, vd) = (ord(&num), ord(&den));
    if vd >= den.prec() {
        return Err(Error::Stage {
            stage: "evaluate_j",
            message: "denominator vanishes to working precision".into(),
        });
    }
    if vn < vd {
        return Ok(JValue::Cusp);
    }
    if vn > vd {
        return Ok(JValue::Value(BigRational::zero()));
    }
    let a = num.coeff(vn).unwrap();
    let b = den.coeff(vd).unwrap();
    Ok(JValue::Value(a / b))
}

/// Evaluate R_N(x) for a genus-0 model.
pub fn evaluate_j_genus0(rn: &CollapsedRn, x0: &Rational) -> JValue {
    let eval = |p: &[Rational]| {
        let mut acc = BigRational::zero();
        for c in p.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    };
    let num = eval(&rn.num[0]);
    let den = eval(&rn.den);
    if den.is_zero() {
        // The stored fraction is in lowest terms, so num and den cannot
        // vanish together.
        JValue::Cusp
    } else {
        JValue::Value(num / den)
    }
}

/// Newton lift of the curve branch: solve F(x(t), y(t)) = 0 for the unknown
/// coordinate as a power series in t, starting from the rational point.
fn newton_lift(
    f: &BivarPoly,
    known: &LaurentSeries<Rational>,
    start: &Rational,
    prec: i64,
    solve_y: bool,
) -> Result<LaurentSeries<Rational>> {
    let tag = known.tag();
    let mut cur = LaurentSeries::constant(tag, start.clone(), prec);
    let df = if solve_y { f.partial_y() } else { f.partial_x() };
    let rounds = 64 - (prec as u64).leading_zeros() + 2;
    for _ in 0..rounds {
        let (fx, fyv) = if solve_y { (known, &cur) } else { (&cur, known) };
        let val = f.eval_series(tag, fx, Some(fyv), &BigRational::zero())?;
        if val.is_zero() {
            break;
        }
        let der = df.eval_series(tag, fx, Some(fyv), &BigRational::zero())?;
        let delta = val.mul(&der.inv()?)?;
        cur = cur.sub(&delta)?.truncate(prec);
    }
    let (fx, fyv) = if solve_y { (known, &cur) } else { (&cur, known) };
    let res = f.eval_series(tag, fx, Some(fyv), &BigRational::zero())?;
    if !res.is_zero() {
        return Err(Error::Stage {
            stage: "evaluate_j",
            message: "branch lift did not converge".into(),
        });
    }
    Ok(cur)
}

fn eval_univariate_series(
    p: &[Rational],
    x: &LaurentSeries<Rational>,
) -> Result<LaurentSeries<Rational>> {
    let tag = x.tag();
    let mut acc = LaurentSeries::zero(tag, i64::MAX / 4);
    for c in p.iter().rev() {
        acc = acc
            .mul(x)?
            .add(&LaurentSeries::constant(tag, c.clone(), i64::MAX / 4))?;
    }
    Ok(acc)
}

fn eval_univariate_series_sum(
    ys: &[Vec<Rational>],
    x: &LaurentSeries<Rational>,
    y: &LaurentSeries<Rational>,
) -> Result<LaurentSeries<Rational>> {
    let tag = x.tag();
    let mut acc = LaurentSeries::zero(tag, i64::MAX / 4);
    let mut ypow = LaurentSeries::constant(tag, BigRational::one(), i64::MAX / 4);
    for (k, coeffs) in ys.iter().enumerate() {
        if k > 0 {
            ypow = ypow.mul(y)?;
        }
        acc = acc.add(&eval_univariate_series(coeffs, x)?.mul(&ypow)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_i64;
    use crate::modcurve::cusps_gamma0;

    #[test]
    fn j_series_against_brute_force_oracle() {
        // Oracle: literal finite product for the Euler factor, the 24th
        // power by repeated multiplication, E4 from divisor sums, divide.
        let prec = 12i64;
        let tag = VarTag::new(1, 1);
        let mut euler = LaurentSeries::constant(tag, BigRational::one(), prec);
        for k in 1..prec {
            let mut v = vec![BigRational::zero(); k as usize + 1];
            v[0] = BigRational::one();
            v[k as usize] = -BigRational::one();
            let factor = LaurentSeries::from_coeffs(tag, 0, prec, v);
            euler = euler.mul(&factor).unwrap().truncate(prec);
        }
        let mut delta_over_q = LaurentSeries::constant(tag, BigRational::one(), prec);
        for _ in 0..24 {
            delta_over_q = delta_over_q.mul(&euler).unwrap().truncate(prec);
        }
        let e4 = LaurentSeries::from_coeffs(tag, 0, prec, e4_coeffs(prec as usize));
        let e43 = e4.mul(&e4).unwrap().mul(&e4).unwrap().truncate(prec);
        let oracle = e43.mul(&delta_over_q.inv().unwrap()).unwrap();

        let j = j_expansion(prec - 2);
        for k in -1..j.prec() {
            assert_eq!(
                j.coeff(k).unwrap(),
                oracle.coeff(k + 1).unwrap(), // oracle computes q * j
                "j coefficient at q^{k}"
            );
        }
        assert_eq!(j.coeff(-1).unwrap(), rat_i64(1));
        assert_eq!(j.coeff(0).unwrap(), rat_i64(744));
        assert_eq!(j.coeff(1).unwrap(), rat_i64(196884));
        assert_eq!(j.coeff(2).unwrap(), rat_i64(21493760));
    }

    #[test]
    fn j_pole_orders_at_cusps() {
        for q in cusps_gamma0(14).unwrap() {
            let s = j_expansion_at(14, &q, 3);
            let expect = (14 / (q.d * q.width)) as i64;
            assert_eq!(s.valuation(), -expect, "pole order at {}", q.label());
        }
        let q = cusps_gamma0(16)
            .unwrap()
            .into_iter()
            .find(|c| c.d == 4)
            .unwrap();
        assert_eq!(j_expansion_at(16, &q, 3).valuation(), -1);
    }

    #[test]
    fn minimal_polynomial_of_rational_and_root() {
        let c = CycNum::from_rational(9, rat_i64(3));
        assert_eq!(minimal_polynomial(&c), vec![rat_i64(-3), rat_i64(1)]);
        // 3 zeta_3 inside Q(zeta_9): minimal polynomial T^2 + 3T + 9.
        let z3 = CycNum::zeta_pow(9, 3).scale(&rat_i64(3));
        assert_eq!(
            minimal_polynomial(&z3),
            vec![rat_i64(9), rat_i64(3), rat_i64(1)]
        );
    }

    fn on_curve(eq: &BivarPoly, x: i64, y: i64) -> (Rational, Rational) {
        let (xr, yr) = (rat_i64(x), rat_i64(y));
        assert!(eq.eval_point(&xr, &yr).is_zero(), "({x},{y}) not on curve");
        (xr, yr)
    }

    #[test]
    fn evaluate_j_handles_removable_zero() {
        // Level-14 data: J = (A Y + B)/((X+1)^4 X^2 (X-7)); at (0,4) both
        // numerator and denominator vanish to order 2 with limit -3375; at
        // (0,-3), (7,25), (-1,1) the point is a cusp.
        let eq = BivarPoly::parse("Y^2 - X^3 + X*Y - 6*X^2 - Y - 18*X - 12").unwrap();
        let a = BivarPoly::parse(
            "-7*X^12-28*X^11+154*X^10+1588*X^9+5775*X^8+11592*X^7+14028*X^6+10248*X^5+4263*X^4+980*X^3+4410*X^2+196*X+49",
        )
        .unwrap();
        let b = BivarPoly::parse(
            "X^14+18*X^13+62*X^12-416*X^11-4665*X^10-19750*X^9-47712*X^8-71184*X^7-70977*X^6-56762*X^5-41850*X^4-6672*X^3+5593*X^2-882*X-196",
        )
        .unwrap();
        let den = BivarPoly::parse("(X+1)^4*X^2*(X-7)").unwrap();
        let rn = CollapsedRn {
            num: vec![b.as_univariate_x().unwrap(), a.as_univariate_x().unwrap()],
            den: den.as_univariate_x().unwrap(),
            den_factors: None,
        };
        let (x, y) = on_curve(&eq, 0, 4);
        assert_eq!(
            evaluate_j(&eq, &rn, &x, &y).unwrap(),
            JValue::Value(rat_i64(-3375))
        );
        // (7,-31) carries the other CM value 255^3 = 16581375
        // (discriminant -28).
        let (x, y) = on_curve(&eq, 7, -31);
        assert_eq!(
            evaluate_j(&eq, &rn, &x, &y).unwrap(),
            JValue::Value(rat_i64(16581375))
        );
        for (cx, cy) in [(7, 25), (-1, 1), (0, -3)] {
            let (x, y) = on_curve(&eq, cx, cy);
            assert_eq!(
                evaluate_j(&eq, &rn, &x, &y).unwrap(),
                JValue::Cusp,
                "({cx},{cy}) must be a cusp"
            );
        }
        assert!(evaluate_j(&eq, &rn, &rat_i64(1), &rat_i64(1)).is_err());
    }
}
