//! Exact linear algebra over series: the minimal equation F_N(X,Y) of the
//! two lowest generators, the relation rows expressing F_1 F_{i+2} -
//! F_2 F_{i+1} in the span below, the Cramer solve turning those rows into
//! rational representations H_i = U_i / Delta, and the reduction of a
//! function with poles only at P to a polynomial in the generator basis.

mod linalg;
mod poly;

pub use linalg::{kernel_basis, solve_exact};
pub use poly::{uni_divmod, uni_gcd, BivarPoly, MultiPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{denom_lcm, numer_gcd, Rational};
use crate::series::LaurentSeries;
use crate::{Error, Result};

/// Extra rows beyond the unknown count in every overdetermined solve; the
/// guard rows turn under-precision into a hard inconsistency error instead
/// of a silent fit.
pub const SOLVE_GUARD: usize = 20;

fn check_generator(f: &LaurentSeries<Rational>, pole: i64, what: &str) -> Result<()> {
    if f.valuation() != -pole {
        return Err(Error::PrecisionInsufficient(format!(
            "{what}: expected pole order {pole}, found valuation {}",
            f.valuation()
        )));
    }
    if f.leading() != Some(&BigRational::one()) {
        return Err(Error::PrecisionInsufficient(format!(
            "{what}: leading coefficient must be 1"
        )));
    }
    Ok(())
}

/// Rows of exponent-indexed linear equations extracted from series.
///
/// Each basis entry contributes a column; the target contributes the right
/// hand side. Rows run over exponents `e_min .. e_min + rows`.
fn series_system(
    basis: &[LaurentSeries<Rational>],
    target: &LaurentSeries<Rational>,
    e_min: i64,
    rows: usize,
) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let e_max = e_min + rows as i64;
    for s in basis.iter().chain(std::iter::once(target)) {
        if s.prec() < e_max {
            return Err(Error::PrecisionInsufficient(format!(
                "series precision {} below required {}",
                s.prec(),
                e_max
            )));
        }
    }
    let mut a = Vec::with_capacity(rows);
    let mut b = Vec::with_capacity(rows);
    for e in e_min..e_max {
        a.push(basis.iter().map(|s| s.coeff(e).unwrap()).collect());
        b.push(target.coeff(e).unwrap());
    }
    Ok((a, b))
}

/// The minimal equation of F_2 over C(F_1):
/// F_N(X,Y) = Y^(g+1) - X^(g+2) + Phi_g(X) Y^g + ... + Phi_0(X),
/// with deg Phi_j <= g+1-j, solved as an exact linear system in the Phi
/// coefficients from the <1/1>-expansions of the two generators.
pub fn minimal_equation(
    f1: &LaurentSeries<Rational>,
    f2: &LaurentSeries<Rational>,
    g: u32,
) -> Result<BivarPoly> {
    assert!(g >= 1, "minimal_equation needs genus >= 1");
    check_generator(f1, g as i64 + 1, "F1")?;
    check_generator(f2, g as i64 + 2, "F2")?;

    // Unknowns: coefficients of X^k Y^j for j <= g, k <= g+1-j.
    let mut monomials: Vec<(u32, u32)> = Vec::new();
    for j in 0..=g {
        for k in 0..=(g + 1 - j) {
            monomials.push((j, k));
        }
    }
    let tag = f1.tag();
    let mut x_pows = vec![LaurentSeries::constant(tag, BigRational::one(), i64::MAX / 4)];
    for _ in 0..g + 2 {
        x_pows.push(x_pows.last().unwrap().mul(f1)?);
    }
    let mut y_pows = vec![LaurentSeries::constant(tag, BigRational::one(), i64::MAX / 4)];
    for _ in 0..g + 1 {
        y_pows.push(y_pows.last().unwrap().mul(f2)?);
    }
    let basis: Vec<LaurentSeries<Rational>> = monomials
        .iter()
        .map(|&(j, k)| x_pows[k as usize].mul(&y_pows[j as usize]))
        .collect::<Result<_>>()?;
    // Y^(g+1) - X^(g+2) moved to the right hand side.
    let target = x_pows[g as usize + 2].sub(&y_pows[g as usize + 1])?;

    let e_min = -((g as i64 + 1) * (g as i64 + 2)) + 1;
    let rows = monomials.len() + SOLVE_GUARD;
    let (a, b) = series_system(&basis, &target, e_min, rows)?;
    let sol = solve_exact(&a, &b).map_err(|e| {
        Error::Stage {
            stage: "minimal_equation",
            message: format!("{e}; raise precision or check the generators"),
        }
    })?;

    let mut f = BivarPoly::monomial(g + 1, 0, BigRational::one());
    f = f.add(&BivarPoly::monomial(0, g + 2, -BigRational::one()));
    for (&(j, k), c) in monomials.iter().zip(&sol) {
        f = f.add(&BivarPoly::monomial(j, k, c.clone()));
    }

    // Residual gate: the equation must vanish on the series through their
    // full shared precision, not just on the solved rows.
    let res = f.eval_series(tag, f1, Some(f2), &BigRational::zero())?;
    if !res.is_zero() {
        return Err(Error::Stage {
            stage: "minimal_equation",
            message: format!(
                "residual of order {} survives; generators do not satisfy a curve of this shape",
                res.valuation()
            ),
        });
    }
    Ok(f)
}

/// One relation row: F_1 F_{i+2} - F_2 F_{i+1} + sum_k a_k F_k F_1 +
/// sum_k b_k F_k + c = 0, with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct RelationRow {
    pub i: u32,
    /// a_{i,k} for k = 1..=i+1.
    pub a: Vec<Rational>,
    /// b_{i,k} for k = 1..=g+1.
    pub b: Vec<Rational>,
    pub c: Rational,
}

impl RelationRow {
    /// The full row as a polynomial in F_1..F_{g+1} (for display and for
    /// comparison against published integer-cleared rows).
    pub fn as_multipoly(&self, g: u32) -> MultiPoly {
        let nv = (g + 1) as usize;
        let mut p = MultiPoly::zero(nv);
        let mono = |k: usize, with_f1: bool| {
            let mut e = vec![0u16; nv];
            e[k - 1] += 1;
            if with_f1 {
                e[0] += 1;
            }
            e
        };
        p.add_term(mono(self.i as usize + 2, true), BigRational::one());
        // - F_2 F_{i+1}
        let mut e = vec![0u16; nv];
        e[1] += 1;
        e[self.i as usize] += 1;
        p.add_term(e, -BigRational::one());
        for (k, ak) in self.a.iter().enumerate() {
            p.add_term(mono(k + 1, true), ak.clone());
        }
        for (k, bk) in self.b.iter().enumerate() {
            p.add_term(mono(k + 1, false), bk.clone());
        }
        p.add_term(vec![0; nv], self.c.clone());
        p
    }

    /// Scale to primitive integers with the F_1 F_{i+2} coefficient positive;
    /// returns the scale factor applied.
    pub fn primitive_scale(&self) -> Rational {
        let all = self.a.iter().chain(self.b.iter()).chain([&self.c]);
        let l = denom_lcm(all.clone());
        let ints: Vec<BigInt> = all
            .map(|r| (r * BigRational::from_integer(l.clone())).to_integer())
            .chain([l.clone()]) // the unit leading coefficient scales to l
            .collect();
        let g = numer_gcd(ints.iter());
        BigRational::new(l, g)
    }
}

/// Solve the relation row for a given i (1 <= i <= g-1) from the generator
/// expansions at P. Uniqueness is structural: the spanning monomials have
/// pairwise distinct pole orders, so the overdetermined solve either
/// produces the single solution or reports rank/consistency failure.
pub fn relation_coeffs(f: &[LaurentSeries<Rational>], g: u32, i: u32) -> Result<RelationRow> {
    assert!(g >= 2, "relation rows need genus >= 2");
    assert!((1..g).contains(&i), "row index out of range");
    assert_eq!(f.len() as u32, g + 1, "need F_1..F_{{g+1}}");
    for (k, fk) in f.iter().enumerate() {
        check_generator(fk, g as i64 + 1 + k as i64, &format!("F{}", k + 1))?;
    }
    let tag = f[0].tag();
    let iu = i as usize;

    // Basis: F_k F_1 (k=1..=i+1), F_k (k=1..=g+1), 1.
    let mut basis: Vec<LaurentSeries<Rational>> = Vec::new();
    for k in 1..=iu + 1 {
        basis.push(f[k - 1].mul(&f[0])?);
    }
    for k in 1..=(g as usize + 1) {
        basis.push(f[k - 1].clone());
    }
    basis.push(LaurentSeries::constant(tag, BigRational::one(), i64::MAX / 4));
    // Target: -(F_1 F_{i+2} - F_2 F_{i+1}).
    let target = f[1].mul(&f[iu])?.sub(&f[0].mul(&f[iu + 1])?)?;

    let e_min = -(2 * g as i64 + i as i64 + 2);
    let rows = basis.len() + SOLVE_GUARD;
    let (a, b) = series_system(&basis, &target, e_min, rows)?;
    let sol = solve_exact(&a, &b).map_err(|e| Error::Stage {
        stage: "relation_coeffs",
        message: format!("row i={i}: {e}"),
    })?;

    let row = RelationRow {
        i,
        a: sol[..=iu].to_vec(),
        b: sol[iu + 1..iu + 2 + g as usize].to_vec(),
        c: sol[iu + 2 + g as usize].clone(),
    };

    // Residual gate over the full precision.
    let mut res = f[0].mul(&f[iu + 1])?.sub(&f[1].mul(&f[iu])?)?;
    for (k, ak) in row.a.iter().enumerate() {
        res = res.add(&f[k].mul(&f[0])?.scale(ak))?;
    }
    for (k, bk) in row.b.iter().enumerate() {
        res = res.add(&f[k].scale(bk))?;
    }
    res = res.add(&LaurentSeries::constant(tag, row.c.clone(), i64::MAX / 4))?;
    if !res.is_zero() {
        return Err(Error::Stage {
            stage: "relation_coeffs",
            message: format!("row i={i} residual of order {} survives", res.valuation()),
        });
    }
    Ok(row)
}

/// The coefficient matrix of the linear system in X_1..X_{g-1} (with
/// X_k = F_{k+2}) over Q[F_1, F_2], built from integer-primitive-scaled
/// rows, together with the right-hand sides.
fn relation_system(rows: &[RelationRow], g: u32) -> (Vec<Vec<BivarPoly>>, Vec<BivarPoly>) {
    let size = (g - 1) as usize;
    assert_eq!(rows.len(), size);
    let mut mat = vec![vec![BivarPoly::zero(); size]; size];
    let mut rhs = vec![BivarPoly::zero(); size];
    for (ridx, row) in rows.iter().enumerate() {
        let k_i = row.primitive_scale();
        let a = |k: usize| row.a[k - 1].clone() * &k_i; // a_{i,k}, k=1..=i+1
        let b = |k: usize| row.b[k - 1].clone() * &k_i; // b_{i,k}, k=1..=g+1
        let i = ridx + 1; // row index in the 1-based layout
        for j in 1..=size {
            // entries per the case split on j relative to i
            let e = if j + 1 < i {
                // j < i-1
                BivarPoly::x().scale(&a(j + 2)).add(&BivarPoly::constant(b(j + 2)))
            } else if j + 1 == i {
                // j = i-1
                BivarPoly::x()
                    .scale(&a(i + 1))
                    .add(&BivarPoly::constant(b(i + 1)))
                    .sub(&BivarPoly::y().scale(&k_i))
            } else if j == i {
                BivarPoly::x().scale(&k_i).add(&BivarPoly::constant(b(i + 2)))
            } else {
                // j > i
                BivarPoly::constant(b(j + 2))
            };
            mat[ridx][j - 1] = e;
        }
        // rhs_i = -a_1 F_1^2 - a_2 F_2 F_1 - b_1 F_1 - b_2 F_2 - c_i
        let mut r = BivarPoly::monomial(0, 2, -a(1));
        r = r.add(&BivarPoly::monomial(1, 1, -a(2)));
        r = r.add(&BivarPoly::monomial(0, 1, -b(1)));
        r = r.add(&BivarPoly::monomial(1, 0, -b(2)));
        r = r.add(&BivarPoly::constant(-(row.c.clone() * &k_i)));
        rhs[ridx] = r;
    }
    (mat, rhs)
}

fn poly_det(mat: &[Vec<BivarPoly>]) -> BivarPoly {
    let n = mat.len();
    match n {
        0 => BivarPoly::one(),
        1 => mat[0][0].clone(),
        _ => {
            let mut acc = BivarPoly::zero();
            for (r, entry) in mat.iter().map(|row| &row[0]).enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BivarPoly>> = mat
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != r)
                    .map(|(_, row)| row[1..].to_vec())
                    .collect();
                let term = entry.mul(&poly_det(&minor));
                acc = if r % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Rational representation of a higher generator: F_i = U_i / Delta.
#[derive(Clone, Debug)]
pub struct RationalRep {
    /// Generator index i (3..=g+1).
    pub i: u32,
    pub u: BivarPoly,
}

/// Cramer's rule on the relation system: Delta = det A and one
/// column-substituted determinant per higher generator. The returned U_i
/// satisfy A (U_3,..,U_{g+1})^T = Delta * rhs as exact polynomial
/// identities (asserted here).
pub fn solve_hi(rows: &[RelationRow], g: u32) -> Result<(BivarPoly, Vec<RationalRep>)> {
    assert!(g >= 2);
    let (mat, rhs) = relation_system(rows, g);
    let delta = poly_det(&mat);
    if delta.is_zero() {
        return Err(Error::SingularSystem(
            "relation coefficient matrix is singular".into(),
        ));
    }
    let size = (g - 1) as usize;
    let mut reps = Vec::with_capacity(size);
    for col in 0..size {
        let mut m2: Vec<Vec<BivarPoly>> = mat.to_vec();
        for (r, row) in m2.iter_mut().enumerate() {
            row[col] = rhs[r].clone();
        }
        reps.push(RationalRep {
            i: col as u32 + 3,
            u: poly_det(&m2),
        });
    }
    // Cramer identity check: sum_j A[r][j] U_j = Delta * rhs[r].
    for (r, row) in mat.iter().enumerate() {
        let mut acc = BivarPoly::zero();
        for (j, e) in row.iter().enumerate() {
            acc = acc.add(&e.mul(&reps[j].u));
        }
        if acc != delta.mul(&rhs[r]) {
            return Err(Error::Stage {
                stage: "solve_hi",
                message: format!("Cramer identity fails on row {r}"),
            });
        }
    }
    Ok((delta, reps))
}

/// Reduce a function with poles only at P to a polynomial in the generator
/// basis F_1..F_{g+1}, following the pole-order descent: with
/// n = (2g+1) l + k, subtract the leading coefficient times
/// F_{g+1}^l (k = 0), F_{g+1}^(l-1) F_1 F_k (0 < k < g+1), or
/// F_{g+1}^l F_{k-g} (k >= g+1), and recurse.
pub fn reduce_to_poly(
    f: &LaurentSeries<Rational>,
    basis: &[LaurentSeries<Rational>],
    g: u32,
) -> Result<MultiPoly> {
    let nv = basis.len();
    assert_eq!(nv as u32, g + 1);
    for (k, fk) in basis.iter().enumerate() {
        check_generator(fk, g as i64 + 1 + k as i64, &format!("F{}", k + 1))?;
    }
    let tag = f.tag();
    let step = 2 * g as i64 + 1;

    // Power cache for F_{g+1}.
    let mut top_pows = vec![LaurentSeries::constant(tag, BigRational::one(), i64::MAX / 4)];
    let top_pow = |l: usize, pows: &mut Vec<LaurentSeries<Rational>>| -> Result<LaurentSeries<Rational>> {
        while pows.len() <= l {
            let next = pows.last().unwrap().mul(&basis[nv - 1])?;
            pows.push(next);
        }
        Ok(pows[l].clone())
    };

    let mut rem = f.clone();
    let mut out = MultiPoly::zero(nv);
    while rem.valuation() < 0 {
        let n = -rem.valuation();
        if n <= g as i64 {
            return Err(Error::Stage {
                stage: "reduce_to_poly",
                message: format!(
                    "remainder has pole order {n} <= g = {g}; P would be a Weierstrass point \
                     or the input has poles off P"
                ),
            });
        }
        let l = (n / step) as usize;
        let k = (n % step) as usize;
        let mut exps = vec![0u16; nv];
        let u = if k == 0 {
            exps[nv - 1] = l as u16;
            top_pow(l, &mut top_pows)?
        } else if k < g as usize + 1 {
            debug_assert!(l >= 1, "pole order {n} <= g is excluded above");
            exps[nv - 1] = (l - 1) as u16;
            exps[0] += 1;
            exps[k - 1] += 1;
            let base = top_pow(l - 1, &mut top_pows)?;
            base.mul(&basis[0])?.mul(&basis[k - 1])?
        } else {
            exps[nv - 1] = l as u16;
            exps[k - g as usize - 1] += 1;
            top_pow(l, &mut top_pows)?.mul(&basis[k - g as usize - 1])?
        };
        debug_assert_eq!(u.valuation(), -n, "U must realize the pole order");
        let c = rem.leading().cloned().expect("nonzero remainder");
        out.add_term(exps, c.clone());
        rem = rem.sub(&u.scale(&c))?;
        if rem.prec() < 1 {
            return Err(Error::PrecisionInsufficient(
                "reduction consumed the working precision before terminating".into(),
            ));
        }
    }
    // Constant tail.
    if let Some(c0) = rem.coeff(0) {
        if !c0.is_zero() {
            out.add_term(vec![0; nv], c0.clone());
            rem = rem.sub(&LaurentSeries::constant(tag, c0, i64::MAX / 4))?;
        }
    }
    if !rem.is_zero() {
        return Err(Error::Stage {
            stage: "reduce_to_poly",
            message: format!(
                "non-polynomial tail of valuation {} survives the descent",
                rem.valuation()
            ),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_i64;
    use crate::series::VarTag;
    use crate::weier::{trace_expansion_at_p, ModFuncExpr};

    fn normalized_p_expansion(n: u32, expr: &str, prec: i64) -> LaurentSeries<Rational> {
        let e = ModFuncExpr::parse(n, expr).unwrap();
        let s = trace_expansion_at_p(&e, prec).unwrap();
        let lead = s.leading().unwrap().clone();
        s.scale(&(BigRational::one() / lead))
    }

    #[test]
    fn n14_minimal_equation() {
        let f1 = normalized_p_expansion(14, "T[5,1,2,1]", 40);
        let f2 = normalized_p_expansion(14, "T[4,1,3,1]*[5,1,2,1]", 40);
        let eq = minimal_equation(&f1, &f2, 1).unwrap();
        let want = BivarPoly::parse("Y^2 - X^3 + Y*X - 6*X^2 - Y - 18*X - 12").unwrap();
        assert_eq!(eq, want);
    }

    #[test]
    fn n11_minimal_equation() {
        let f1 = normalized_p_expansion(11, "T[2,1,5,1]", 40);
        let f2 = normalized_p_expansion(11, "T[2,1,3,1]", 40);
        let eq = minimal_equation(&f1, &f2, 1).unwrap();
        let want = BivarPoly::parse("Y^2 - 5*Y - X^3 + 7*X^2 - 6*X + 18").unwrap();
        assert_eq!(eq, want);
    }

    #[test]
    fn minimal_equation_rejects_bad_precision() {
        let f1 = normalized_p_expansion(14, "T[5,1,2,1]", 6);
        let f2 = normalized_p_expansion(14, "T[4,1,3,1]*[5,1,2,1]", 6);
        assert!(minimal_equation(&f1, &f2, 1).is_err());
    }

    #[test]
    fn reduce_constant_is_constant() {
        let f1 = normalized_p_expansion(14, "T[5,1,2,1]", 30);
        let f2 = normalized_p_expansion(14, "T[4,1,3,1]*[5,1,2,1]", 30);
        let tag = VarTag::new(14, 1);
        let c = LaurentSeries::constant(tag, rat_i64(7), 25);
        let p = reduce_to_poly(&c, &[f1, f2], 1).unwrap();
        assert_eq!(p.text(&["X", "Y"]), "7");
    }

    #[test]
    fn reduce_round_trips_a_product() {
        // F_1^2 F_2 has poles only at P; reduce and re-expand.
        let f1 = normalized_p_expansion(14, "T[5,1,2,1]", 40);
        let f2 = normalized_p_expansion(14, "T[4,1,3,1]*[5,1,2,1]", 40);
        let f = f1.mul(&f1).unwrap().mul(&f2).unwrap();
        let p = reduce_to_poly(&f, &[f1.clone(), f2.clone()], 1).unwrap();
        let back = p
            .eval_series(f.tag(), &[f1, f2], &BigRational::zero())
            .unwrap();
        assert!(back.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn reduce_first_step_case_split() {
        // g=1, n=4: first U must be F_1^2 (l=1, k=1).
        let f1 = normalized_p_expansion(14, "T[5,1,2,1]", 40);
        let f2 = normalized_p_expansion(14, "T[4,1,3,1]*[5,1,2,1]", 40);
        let f = f1.mul(&f1).unwrap();
        let p = reduce_to_poly(&f, &[f1, f2], 1).unwrap();
        // The result must contain the X^2 monomial with coefficient 1.
        let x2 = p
            .terms()
            .find(|(e, _)| e.as_slice() == [2, 0])
            .map(|(_, c)| c.clone());
        assert_eq!(x2, Some(rat_i64(1)));
    }
}
