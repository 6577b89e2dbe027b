//! Generator search: find F_1..F_{g+1} with pole orders g+1..2g+1 at
//! P = <1/1>, leading coefficient 1, and no pole at any other cusp.
//!
//! The pool holds single traces T(W_a) and two families of double traces
//! T(W_a W_b) modeled on the shapes that actually occur in practice:
//! a = [x,t,y,t], b = [y,1,x,1] for a folded residue t, and pairs of
//! [p,1,q,1]-style vectors. Candidates pass the order-bound filter (the
//! trace-order lower bound must sit in [-(2g+1+slack), -(g+1)] at D = 1 and
//! be >= -(D, N/D) at every other divisor), are deduplicated under the
//! lambda-action and entry folding, and then short exact expansions decide:
//! an exact elimination over (other-cusp pole coefficients, P-pole
//! coefficients) extracts one monic combination per pole order. Combinations
//! may cancel residual simple poles that single candidates have at cusps
//! other than P, which is why the elimination runs jointly on both
//! coordinate blocks rather than discarding such candidates outright.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{euler_phi, rat_i64, CycNum, Rational};
use crate::modcurve::{cusps_gamma0, genus0, lambda_orbit, trace_order_bound, CuspClass, WVector};
use crate::series::LaurentSeries;
use crate::weier::{expansion_at, trace_expansion_at_p, ModFuncExpr};
use crate::{Error, Result};

/// Search bounds, surfaced as CLI flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Extra depth below -(2g+1) admitted in the D=1 order bound; None
    /// means 2g.
    pub slack: Option<i64>,
    /// Hard cap on the filtered candidate pool.
    pub pool_cap: usize,
    /// Levels above this skip the quadratic [p,1,q,1]*[r,1,s,1] family.
    pub family_a_max_level: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            slack: None,
            pool_cap: 4000,
            family_a_max_level: 26,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Searched,
    LoadedFromFile,
    PaperBuiltin,
}

/// A validated generator system.
#[derive(Clone, Debug)]
pub struct GeneratorSystem {
    pub n: u32,
    pub g: u32,
    pub funcs: Vec<ModFuncExpr>,
    pub provenance: Provenance,
}

impl GeneratorSystem {
    /// Expansions at P, at the given precision, in pole-order order.
    pub fn expand_p(&self, prec: i64) -> Result<Vec<LaurentSeries<Rational>>> {
        self.funcs
            .iter()
            .map(|f| trace_expansion_at_p(f, prec))
            .collect()
    }

    /// Expansions at every cusp class other than P, local units.
    pub fn expand_at_cusps(
        &self,
        prec: i64,
    ) -> Result<BTreeMap<CuspClass, Vec<LaurentSeries<CycNum>>>> {
        let mut out = BTreeMap::new();
        for q in cusps_gamma0(self.n)? {
            if q.is_p() {
                continue;
            }
            let series: Vec<LaurentSeries<CycNum>> = self
                .funcs
                .iter()
                .map(|f| expansion_at(f, &q, prec))
                .collect::<Result<_>>()?;
            out.insert(q, series);
        }
        Ok(out)
    }

    /// Serialize to the generator file format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "g": self.g,
            "functions": self.funcs.iter().map(|f| f.text()).collect::<Vec<_>>(),
        })
    }

    /// Load from the generator file format, normalizing leading
    /// coefficients to 1 (a pure rescale of each expression).
    pub fn from_json(value: &serde_json::Value) -> Result<GeneratorSystem> {
        let n = value["N"]
            .as_u64()
            .ok_or_else(|| Error::Parse("generator file: missing N".into()))? as u32;
        let funcs = value["functions"]
            .as_array()
            .ok_or_else(|| Error::Parse("generator file: missing functions".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::Parse("generator file: non-string entry".into()))
                    .and_then(|s| ModFuncExpr::parse(n, s))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = genus0(n);
        if let Some(gf) = value["g"].as_u64() {
            if gf as u32 != g {
                return Err(Error::Parse(format!(
                    "generator file claims g={gf}, but g_0({n}) = {g}"
                )));
            }
        }
        build_system(n, g, funcs, Provenance::LoadedFromFile)
    }
}

/// Normalize expressions to leading coefficient 1 at P and wrap them up.
pub fn build_system(
    n: u32,
    g: u32,
    funcs: Vec<ModFuncExpr>,
    provenance: Provenance,
) -> Result<GeneratorSystem> {
    if funcs.len() as u32 != g + 1 {
        return Err(Error::SearchFailed(format!(
            "need {} generators for genus {g}, got {}",
            g + 1,
            funcs.len()
        )));
    }
    let mut normalized = Vec::with_capacity(funcs.len());
    for f in funcs {
        let head = trace_expansion_at_p(&f, 2)?;
        let lead = head
            .leading()
            .cloned()
            .ok_or_else(|| Error::SearchFailed("generator expands to zero".into()))?;
        normalized.push(f.scaled(&(BigRational::one() / lead)));
    }
    Ok(GeneratorSystem {
        n,
        g,
        funcs: normalized,
        provenance,
    })
}

/// Fold x into the p-function symmetry class representative in 1..=N/2.
fn fold(n: u32, x: i64) -> i64 {
    let r = x.rem_euclid(n as i64);
    r.min(n as i64 - r)
}

/// Canonical key of a trace expression under the lambda-action, entry
/// folding, and commutativity of the two product factors.
fn canonical_key(n: u32, a: &WVector, b: Option<&WVector>) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    for lambda in lambda_orbit(n) {
        let canon_vec = |v: &WVector| -> Vec<i64> {
            let w = v.scaled(lambda);
            let mut num = [fold(n, w.a[0]), fold(n, w.a[1])];
            let mut den = [fold(n, w.a[2]), fold(n, w.a[3])];
            num.sort_unstable();
            den.sort_unstable();
            vec![num[0], num[1], den[0], den[1]]
        };
        let mut parts: Vec<Vec<i64>> = match b {
            Some(b) => {
                let mut ps = vec![canon_vec(a), canon_vec(b)];
                ps.sort();
                ps
            }
            None => vec![canon_vec(a)],
        };
        let key: Vec<i64> = parts.drain(..).flatten().collect();
        if best.as_ref().map_or(true, |cur| key < *cur) {
            best = Some(key);
        }
    }
    best.unwrap()
}

/// Enumerate the candidate pool for level N, filtered by the order bounds.
pub fn candidate_pool(n: u32, g: u32, bounds: &SearchBounds) -> Result<Vec<ModFuncExpr>> {
    let slack = bounds.slack.unwrap_or(2 * g as i64);
    let lo = -(2 * g as i64 + 1 + slack);
    let hi = -(g as i64 + 1);
    let divisors: Vec<u32> = crate::exact::divisors(n)
        .into_iter()
        .filter(|&d| d != 1)
        .collect();

    let admissible = |a: &WVector, b: Option<&WVector>| -> Option<i64> {
        let b1 = trace_order_bound(a, b, 1);
        if b1 < lo || b1 > hi {
            return None;
        }
        for &d in &divisors {
            let w = crate::exact::gcd_u32(d, n / d) as i64;
            if trace_order_bound(a, b, d) < -w {
                return None;
            }
        }
        Some(b1)
    };

    let half = (n as i64) / 2;
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    // (family rank, bound, key, expr) for deterministic ordering
    let mut pool: Vec<(u8, i64, Vec<i64>, ModFuncExpr)> = Vec::new();

    // Single traces over folded entry pairs.
    for p in 1..=half {
        for q in 1..=half {
            if p == q {
                continue;
            }
            for r in 1..=half {
                for s in 1..=half {
                    if r == s || (p.min(q), p.max(q)) == (r.min(s), r.max(s)) {
                        continue;
                    }
                    let a = match WVector::new(n, [p, q, r, s]) {
                        Ok(a) => a,
                        Err(_) => continue,
                    };
                    let key = canonical_key(n, &a, None);
                    if seen.contains(&key) {
                        continue;
                    }
                    if let Some(bound) = admissible(&a, None) {
                        seen.insert(key.clone());
                        pool.push((
                            0,
                            bound,
                            key,
                            ModFuncExpr::single(n, BigRational::one(), [p, q, r, s])?,
                        ));
                    }
                }
            }
        }
    }

    // Family [x,t,y,t] * [y,1,x,1].
    for t in 2..=half {
        for x in 2..=half {
            if x == t {
                continue;
            }
            for y in 2..=half {
                if y == t || y == x {
                    continue;
                }
                let a = match WVector::new(n, [x, t, y, t]) {
                    Ok(a) => a,
                    Err(_) => continue,
                };
                let b = match WVector::new(n, [y, 1, x, 1]) {
                    Ok(b) => b,
                    Err(_) => continue,
                };
                if a.is_constant() || b.is_constant() {
                    continue;
                }
                let key = canonical_key(n, &a, Some(&b));
                if seen.contains(&key) {
                    continue;
                }
                if let Some(bound) = admissible(&a, Some(&b)) {
                    seen.insert(key.clone());
                    pool.push((
                        1,
                        bound,
                        key,
                        ModFuncExpr::product(n, BigRational::one(), [x, t, y, t], [y, 1, x, 1])?,
                    ));
                }
            }
        }
    }

    // Quadratic family [p,1,q,1] * [r,1,s,1], small levels only.
    if n <= bounds.family_a_max_level {
        for p in 2..=half {
            for q in 2..=half {
                if p == q {
                    continue;
                }
                for r in 2..=half {
                    for s in 2..=half {
                        if r == s {
                            continue;
                        }
                        let a = match WVector::new(n, [p, 1, q, 1]) {
                            Ok(a) => a,
                            Err(_) => continue,
                        };
                        let b = match WVector::new(n, [r, 1, s, 1]) {
                            Ok(b) => b,
                            Err(_) => continue,
                        };
                        if a.is_constant() || b.is_constant() {
                            continue;
                        }
                        let key = canonical_key(n, &a, Some(&b));
                        if seen.contains(&key) {
                            continue;
                        }
                        if let Some(bound) = admissible(&a, Some(&b)) {
                            seen.insert(key.clone());
                            pool.push((
                                2,
                                bound,
                                key,
                                ModFuncExpr::product(
                                    n,
                                    BigRational::one(),
                                    [p, 1, q, 1],
                                    [r, 1, s, 1],
                                )?,
                            ));
                        }
                    }
                }
            }
        }
    }

    if pool.is_empty() {
        return Err(Error::SearchFailed(format!(
            "empty candidate pool at N={n} with bounds {lo}..={hi}"
        )));
    }
    // Shallow bounds first within each family; fully deterministic order.
    pool.sort_by(|x, y| (x.0, -x.1, &x.2).cmp(&(y.0, -y.1, &y.2)));
    pool.truncate(bounds.pool_cap);
    Ok(pool.into_iter().map(|(_, _, _, e)| e).collect())
}

/// A row in the elimination: constraint coordinates plus the combination
/// over pool candidates that produced it.
struct ElimRow {
    coords: Vec<Rational>,
    combo: Vec<(usize, Rational)>,
}

/// Assemble a generator system from the pool by exact elimination.
///
/// Coordinates: for every cusp != P the phi(N) rational components of the
/// local q^-1 coefficient (candidates enter with at most a simple local
/// pole), then the P-coefficients from -(2g+1+slack) through -(g+1). A row
/// whose first surviving coordinate lies in the P-block at exponent -m is a
/// combination with exact pole order m at P and no pole anywhere else.
pub fn assemble_generators(
    pool: &[ModFuncExpr],
    n: u32,
    g: u32,
    bounds: &SearchBounds,
) -> Result<GeneratorSystem> {
    let slack = bounds.slack.unwrap_or(2 * g as i64);
    let deep = 2 * g as i64 + 1 + slack;
    let cusps: Vec<CuspClass> = cusps_gamma0(n)?.into_iter().filter(|q| !q.is_p()).collect();
    let phi = euler_phi(n) as usize;
    let cusp_cols = cusps.len() * phi;
    let p_cols = (deep - g as i64) as usize; // exponents -deep .. -(g+1)
    let total_cols = cusp_cols + p_cols;

    let mut pivots: BTreeMap<usize, ElimRow> = BTreeMap::new();
    let targets: Vec<i64> = (g as i64 + 1..=2 * g as i64 + 1).collect();
    let col_of_order = |m: i64| cusp_cols + (deep - m) as usize;

    let all_claimed = |pivots: &BTreeMap<usize, ElimRow>| {
        targets.iter().all(|&m| pivots.contains_key(&col_of_order(m)))
    };

    for (idx, cand) in pool.iter().enumerate() {
        if all_claimed(&pivots) {
            break;
        }
        // Short expansions: everything the coordinates need, nothing more.
        let p_series = trace_expansion_at_p(cand, -(g as i64))?;
        if p_series.valuation() < -deep {
            // bound was not tight enough; the vector cannot enter the
            // coordinate window
            continue;
        }
        let mut coords = vec![BigRational::zero(); total_cols];
        let mut ok = true;
        for (ci, q) in cusps.iter().enumerate() {
            let s = expansion_at(cand, q, 1)?;
            if s.valuation() < -1 {
                ok = false;
                break;
            }
            if let Some(c) = s.coeff(-1) {
                for (k, comp) in c.coeffs().iter().enumerate() {
                    coords[ci * phi + k] = comp.clone();
                }
            }
        }
        if !ok {
            continue;
        }
        for e in -deep..=-(g as i64 + 1) {
            coords[cusp_cols + (e + deep) as usize] =
                p_series.coeff(e).unwrap_or_else(BigRational::zero);
        }
        let mut row = ElimRow {
            coords,
            combo: vec![(idx, BigRational::one())],
        };
        // Reduce against existing pivots in column order.
        loop {
            let lead = row.coords.iter().position(|c| !c.is_zero());
            let lead = match lead {
                Some(l) => l,
                None => break,
            };
            match pivots.get(&lead) {
                Some(p) => {
                    let f = row.coords[lead].clone();
                    for (c, pc) in row.coords.iter_mut().zip(&p.coords) {
                        *c -= &f * pc;
                    }
                    for (pi, pc) in &p.combo {
                        merge_combo(&mut row.combo, *pi, -(&f * pc));
                    }
                }
                None => {
                    // Normalize and install.
                    let inv = BigRational::one() / row.coords[lead].clone();
                    for c in row.coords.iter_mut() {
                        *c = &*c * &inv;
                    }
                    for (_, pc) in row.combo.iter_mut() {
                        *pc = &*pc * &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }

    let achieved: Vec<i64> = targets
        .iter()
        .copied()
        .filter(|&m| pivots.contains_key(&col_of_order(m)))
        .collect();
    if achieved.len() != targets.len() {
        return Err(Error::SearchFailed(format!(
            "pole orders {targets:?} required at P, achieved {achieved:?}; widen the bounds"
        )));
    }

    // Build the combination expressions, highest pole first -> F_{g+1}..F_1
    // reversed into pole-order g+1..2g+1 order.
    let mut funcs: Vec<ModFuncExpr> = Vec::new();
    for &m in &targets {
        let row = &pivots[&col_of_order(m)];
        let mut expr = ModFuncExpr::constant_expr(n, BigRational::zero());
        for (idx, c) in &row.combo {
            if c.is_zero() {
                continue;
            }
            expr = expr.add(&pool[*idx].scaled(c));
        }
        // Zero the constant term (canonical normalization).
        let head = trace_expansion_at_p(&expr, 1)?;
        let q0 = head.coeff(0).unwrap_or_else(BigRational::zero);
        expr = expr.plus_constant(&-q0);
        funcs.push(expr);
    }
    let system = build_system(n, g, funcs, Provenance::Searched)?;
    let report = verify_system(&system)?;
    if !report.is_empty() {
        return Err(Error::SearchFailed(format!(
            "assembled system fails verification: {}",
            report.join("; ")
        )));
    }
    Ok(system)
}

fn merge_combo(combo: &mut Vec<(usize, Rational)>, idx: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    match combo.iter_mut().find(|(i, _)| *i == idx) {
        Some((_, cur)) => {
            *cur += c;
            if cur.is_zero() {
                combo.retain(|(_, v)| !v.is_zero());
            }
        }
        None => combo.push((idx, c)),
    }
}

/// End-to-end search.
pub fn search_generators(n: u32, bounds: &SearchBounds) -> Result<GeneratorSystem> {
    let g = genus0(n);
    let pool = candidate_pool(n, g, bounds)?;
    assemble_generators(&pool, n, g, bounds)
}

/// Validate all invariants of a generator system; returns the list of
/// violations (empty = pass).
pub fn verify_system(sys: &GeneratorSystem) -> Result<Vec<String>> {
    let mut report = Vec::new();
    let g = genus0(sys.n);
    if g != sys.g {
        report.push(format!("level {} has genus {g}, system claims {}", sys.n, sys.g));
    }
    if sys.funcs.len() as u32 != sys.g + 1 {
        report.push(format!(
            "expected {} generators, found {}",
            sys.g + 1,
            sys.funcs.len()
        ));
    }
    for (k, f) in sys.funcs.iter().enumerate() {
        if f.level != sys.n {
            report.push(format!("F{} has level {} != {}", k + 1, f.level, sys.n));
            continue;
        }
        let want = -(sys.g as i64 + 1 + k as i64);
        let s = match trace_expansion_at_p(f, 2) {
            Ok(s) => s,
            Err(e) => {
                report.push(format!("F{} expansion failed: {e}", k + 1));
                continue;
            }
        };
        if s.valuation() != want {
            report.push(format!(
                "F{}: pole order {} at P, expected {}",
                k + 1,
                -s.valuation(),
                -want
            ));
        } else if s.leading() != Some(&rat_i64(1)) {
            report.push(format!("F{}: leading coefficient is not 1", k + 1));
        }
    }
    // Regularity away from P; pole orders g+1 and g+2 being consecutive
    // (hence coprime) is implied by the checks above.
    if report.is_empty() {
        for q in cusps_gamma0(sys.n)? {
            if q.is_p() {
                continue;
            }
            for (k, f) in sys.funcs.iter().enumerate() {
                let s = expansion_at(f, &q, 1)?;
                if s.valuation() < 0 && !s.is_zero() {
                    report.push(format!(
                        "F{} has a pole of order {} at {}",
                        k + 1,
                        -s.valuation(),
                        q.label()
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_contains_the_level_14_shapes() {
        let bounds = SearchBounds::default();
        let pool = candidate_pool(14, 1, &bounds).unwrap();
        let has_single = pool.iter().any(|e| {
            e.terms.len() == 1
                && e.terms[0].b.is_none()
                && canonical_key(14, &e.terms[0].a, None)
                    == canonical_key(14, &WVector::new(14, [5, 1, 2, 1]).unwrap(), None)
        });
        assert!(has_single, "T[5,1,2,1] (up to symmetry) must be admitted");
        let f2a = WVector::new(14, [4, 1, 3, 1]).unwrap();
        let f2b = WVector::new(14, [5, 1, 2, 1]).unwrap();
        let key = canonical_key(14, &f2a, Some(&f2b));
        let has_product = pool.iter().any(|e| {
            e.terms.len() == 1
                && e.terms[0]
                    .b
                    .as_ref()
                    .map(|b| canonical_key(14, &e.terms[0].a, Some(b)) == key)
                    .unwrap_or(false)
        });
        assert!(has_product, "T[4,1,3,1]*[5,1,2,1] (up to symmetry) must be admitted");
    }

    #[test]
    fn constants_are_excluded() {
        let bounds = SearchBounds::default();
        let pool = candidate_pool(14, 1, &bounds).unwrap();
        for e in &pool {
            for t in &e.terms {
                assert!(!t.a.is_constant());
                if let Some(b) = &t.b {
                    assert!(!b.is_constant());
                }
            }
        }
    }

    #[test]
    fn search_finds_a_system_for_n14() {
        let sys = search_generators(14, &SearchBounds::default()).unwrap();
        assert_eq!(sys.funcs.len(), 2);
        assert!(verify_system(&sys).unwrap().is_empty());
        let f1 = trace_expansion_at_p(&sys.funcs[0], 2).unwrap();
        assert_eq!(f1.valuation(), -2);
        assert_eq!(f1.leading(), Some(&rat_i64(1)));
        // canonical normalization: no constant term
        assert_eq!(f1.coeff(0).unwrap(), rat_i64(0));
    }

    #[test]
    fn verify_flags_corruption() {
        let sys = search_generators(14, &SearchBounds::default()).unwrap();
        let mut bad = sys.clone();
        bad.funcs[0] = bad.funcs[0].scaled(&rat_i64(2));
        let report = verify_system(&bad).unwrap();
        assert!(report.iter().any(|r| r.contains("leading")));
        let mut wrong_level = sys;
        wrong_level.n = 15;
        let report = verify_system(&wrong_level).unwrap();
        assert!(!report.is_empty());
    }
}
