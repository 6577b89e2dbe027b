//! Orchestration: generators (searched, loaded, or built-in), the minimal
//! equation, relation rows and the Cramer solve, cusp killers, and the
//! J-representation, with precision worked out backward from the largest
//! solve and residual gates between all stages. Also home of the embedded
//! regression corpus and the verifier that diffs a pipeline run against it.

pub mod records;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{parse_rational, rat_i64, rational_str, CycNum, Rational};
use crate::jrep::{
    evaluate_j, evaluate_j_genus0, groups_pole_at_p, plan_killers, represent_j, JRepresentation,
    JValue,
};
use crate::modcurve::{cusp_class_of, cusps_gamma0, genus0};
use crate::relations::{
    minimal_equation, relation_coeffs, solve_hi, BivarPoly, MultiPoly, RationalRep, RelationRow,
};
use crate::search::{
    build_system, search_generators, verify_system, GeneratorSystem, Provenance, SearchBounds,
};
use crate::series::LaurentSeries;
use crate::weier::ModFuncExpr;
use crate::{Error, Result};

pub use records::{all_records, record, PaperRecord};

/// Pipeline configuration.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub n: u32,
    /// Guard coefficients past every solve; clamped to >= 10.
    pub precision_guard: i64,
    pub bounds: SearchBounds,
    pub use_paper_generators: bool,
    /// Path to a generator JSON file (overrides search).
    pub generator_file: Option<std::path::PathBuf>,
}

impl PipelineConfig {
    pub fn new(n: u32) -> Self {
        PipelineConfig {
            n,
            precision_guard: 25,
            bounds: SearchBounds::default(),
            use_paper_generators: false,
            generator_file: None,
        }
    }
}

/// Full result bundle of a pipeline run.
pub struct PipelineResult {
    pub n: u32,
    pub genus: u32,
    pub system: GeneratorSystem,
    /// Expansions of the generators at P at the final working precision.
    pub basis_p: Vec<LaurentSeries<Rational>>,
    pub equation: Option<BivarPoly>,
    pub rows: Vec<RelationRow>,
    pub delta: Option<BivarPoly>,
    pub h_reps: Vec<RationalRep>,
    pub jrep: JRepresentation,
}

/// Generators for a level from the embedded corpus.
pub fn paper_generators(n: u32) -> Result<GeneratorSystem> {
    let rec = record(n).ok_or_else(|| {
        Error::Stage {
            stage: "generators",
            message: format!("no built-in generator record for N={n}"),
        }
    })?;
    let g = genus0(n);
    if rec.generators.len() as u32 != g + 1 {
        return Err(Error::Stage {
            stage: "generators",
            message: format!(
                "record for N={n} lists {} expressions for {} slots",
                rec.generators.len(),
                g + 1
            ),
        });
    }
    let funcs = rec
        .generators
        .iter()
        .map(|s| ModFuncExpr::parse(n, s))
        .collect::<Result<Vec<_>>>()?;
    build_system(n, g, funcs, Provenance::PaperBuiltin)
}

/// Run the full pipeline.
pub fn run(config: &PipelineConfig) -> Result<PipelineResult> {
    let n = config.n;
    if n < 5 {
        return Err(Error::UnsupportedLevel(n));
    }
    let g = genus0(n);
    let guard = config.precision_guard.max(10);

    // Stage 1: generators.
    let system = if let Some(path) = &config.generator_file {
        let text = std::fs::read_to_string(path)?;
        GeneratorSystem::from_json(&serde_json::from_str(&text)?)?
    } else if config.use_paper_generators {
        paper_generators(n)?
    } else {
        search_generators(n, &config.bounds)?
    };
    let violations = verify_system(&system)?;
    if !violations.is_empty() {
        return Err(Error::stage("generators", violations.join("; ")));
    }

    // Stage 2: minimal equation. Precision backward from the solve: the
    // row window starts at -(g+1)(g+2)+1 and spans unknowns + guard rows,
    // plus the monomial evaluations themselves consume up to
    // (g+1)(g+2) - (g+1) exponents of input precision.
    let gi = g as i64;
    let unknowns_eq: i64 = (0..=gi).map(|j| gi + 2 - j).sum();
    let eq_window = -(gi + 1) * (gi + 2) + 1 + unknowns_eq + guard;
    let eq_input = eq_window + (gi + 1) * (gi + 2) - (gi + 1) + 2;
    let rel_input = gi + guard + 6 + 2 * gi + 2;
    let prec_eq = eq_input.max(rel_input).max(guard + 4);
    let basis_eq = system.expand_p(prec_eq)?;

    let equation = if g >= 1 {
        Some(minimal_equation(&basis_eq[0], &basis_eq[1], g)?)
    } else {
        None
    };

    // Stage 3: relation rows and the Cramer solve (g >= 2).
    let mut rows = Vec::new();
    let mut delta = None;
    let mut h_reps = Vec::new();
    if g >= 2 {
        for i in 1..g {
            rows.push(relation_coeffs(&basis_eq, g, i)?);
        }
        let (d, reps) = solve_hi(&rows, g)?;
        // Residual gate: Delta(F1,F2) must have pole order g^2-1 at P.
        let ds = d.eval_series(
            basis_eq[0].tag(),
            &basis_eq[0],
            Some(&basis_eq[1]),
            &BigRational::zero(),
        )?;
        let want = -(gi * gi - 1);
        if ds.valuation() != want {
            return Err(Error::stage(
                "solve_hi",
                format!(
                    "det A has valuation {} at P, expected {want}",
                    ds.valuation()
                ),
            ));
        }
        delta = Some(d);
        h_reps = reps;
    }

    // Stage 4: killers. Only F_1 is needed deeply at the other cusps (the
    // killers are polynomials in F_1 and a zero order never needs to be
    // resolved past the pole of J it must cover); the higher generators
    // enter only through the regularity checks and the rarely-taken
    // kernel fallback, so a couple of terms suffice.
    let mut basis_at = BTreeMap::new();
    for q in cusps_gamma0(n)? {
        if q.is_p() {
            continue;
        }
        let pole_j = (n / (q.d * q.width)) as i64;
        let mut series = vec![crate::weier::expansion_at(&system.funcs[0], &q, pole_j + 3)?];
        for f in &system.funcs[1..] {
            series.push(crate::weier::expansion_at(f, &q, 2)?);
        }
        basis_at.insert(q, series);
    }
    let (_killers, groups) = plan_killers(n, &basis_at)?;

    // Stage 5: J-representation. P-precision from the total pole order of
    // J * prod G^m plus the guard.
    let pole_total = n as i64 + groups_pole_at_p(&groups, g);
    let prec_j = pole_total + guard + 4;
    let basis_p = system.expand_p(prec_j.max(prec_eq))?;
    let jrep = represent_j(n, g, &basis_p, &basis_at, equation.as_ref())?;

    Ok(PipelineResult {
        n,
        genus: g,
        system,
        basis_p,
        equation,
        rows,
        delta,
        h_reps,
        jrep,
    })
}

/// Parse a series prefix in the record grammar: terms like `q^-2`, `2q^3`,
/// `8z^2*q^2`, `1/3*q^-5`, `7`, with `z = exp(2 pi i/N)`.
pub fn parse_qz_series(n: u32, text: &str) -> Result<Vec<(i64, CycNum)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut out: BTreeMap<i64, CycNum> = BTreeMap::new();
    let err = |pos: usize, msg: &str| Error::Parse(format!("{msg} at {pos} in `{text}`"));
    while pos < chars.len() {
        while pos < chars.len() && chars[pos].is_whitespace() {
            pos += 1;
        }
        if pos >= chars.len() {
            break;
        }
        let mut sign = BigRational::one();
        if chars[pos] == '+' {
            pos += 1;
        } else if chars[pos] == '-' {
            sign = -sign;
            pos += 1;
        } else if !out.is_empty() {
            return Err(err(pos, "expected sign"));
        }
        while pos < chars.len() && chars[pos].is_whitespace() {
            pos += 1;
        }
        let mut coeff = sign;
        let mut zeta_pow: i64 = 0;
        let mut q_pow: i64 = 0;
        let mut saw_factor = false;
        loop {
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let num: String = chars[start..pos].iter().collect();
                let mut r = BigRational::from_integer(num.parse().unwrap());
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    let dstart = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let den: String = chars[dstart..pos].iter().collect();
                    if den.is_empty() {
                        return Err(err(pos, "expected denominator"));
                    }
                    r /= BigRational::from_integer(den.parse::<num_bigint::BigInt>().unwrap());
                }
                coeff *= r;
                saw_factor = true;
            } else if c == 'z' || c == 'q' {
                pos += 1;
                let mut e: i64 = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let neg = pos < chars.len() && chars[pos] == '-';
                    if neg {
                        pos += 1;
                    }
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(err(pos, "expected exponent"));
                    }
                    let v: String = chars[start..pos].iter().collect();
                    e = v.parse().unwrap();
                    if neg {
                        e = -e;
                    }
                }
                if c == 'z' {
                    zeta_pow += e;
                } else {
                    q_pow += e;
                }
                saw_factor = true;
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(err(pos, "empty term"));
        }
        let value = CycNum::zeta_pow(n, zeta_pow).scale(&coeff);
        let entry = out
            .entry(q_pow)
            .or_insert_with(|| CycNum::zero(n))
            .add(&value);
        out.insert(q_pow, entry);
    }
    Ok(out.into_iter().collect())
}

/// One named check in a verification report.
pub struct VerifyCheck {
    pub name: String,
    /// None = pass, Some(diff description) = mismatch.
    pub diff: Option<String>,
}

pub struct VerifyReport {
    pub n: u32,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.diff.is_none())
    }

    fn push(&mut self, name: impl Into<String>, diff: Option<String>) {
        self.checks.push(VerifyCheck {
            name: name.into(),
            diff,
        });
    }
}

fn canon(p: &BivarPoly) -> BivarPoly {
    p.canonical_integer().0
}

/// Scale a multivariate polynomial to primitive integers with the
/// lexicographically-largest term positive.
fn canon_multi(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let l = crate::exact::denom_lcm(p.terms().map(|(_, c)| c));
    let ints: Vec<num_bigint::BigInt> = p
        .terms()
        .map(|(_, c)| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = crate::exact::numer_gcd(ints.iter());
    let mut s = BigRational::new(l, g);
    let lead = p.terms().last().unwrap().1;
    if (lead * &s).is_negative() {
        s = -s;
    }
    p.scale(&s)
}

fn uni_text(p: &[Rational]) -> String {
    BivarPoly::from_univariate_x(p).text()
}

/// Compare a pipeline run against a corpus record; every available field of
/// the record is checked.
pub fn verify_against_paper(result: &PipelineResult, rec: &PaperRecord) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        n: result.n,
        checks: vec![],
    };
    let fnames = ["F1", "F2", "F3", "F4", "F5", "F6"];

    if let Some(eq_text) = rec.equation {
        let want = canon(&BivarPoly::parse(eq_text)?);
        let diff = match &result.equation {
            Some(eq) if canon(eq) == want => None,
            Some(eq) => Some(format!("computed {}", canon(eq).text())),
            None => Some("no equation computed".into()),
        };
        report.push("equation", diff);
    }

    if let Some((num_t, den_t)) = rec.rn_g0 {
        let num = BivarPoly::parse(num_t)?.as_univariate_x().unwrap();
        let den = BivarPoly::parse(den_t)?.as_univariate_x().unwrap();
        let diff = match &result.jrep.collapsed {
            Some(rn) => {
                // exact fraction equality: cross-multiplied polynomials
                let lhs = BivarPoly::from_univariate_x(&rn.num[0])
                    .mul(&BivarPoly::from_univariate_x(&den));
                let rhs = BivarPoly::from_univariate_x(&num)
                    .mul(&BivarPoly::from_univariate_x(&rn.den));
                if lhs == rhs {
                    None
                } else {
                    Some(format!(
                        "computed ({}) / ({})",
                        uni_text(&rn.num[0]),
                        uni_text(&rn.den)
                    ))
                }
            }
            None => Some("no collapsed form".into()),
        };
        report.push("R_N", diff);
    }

    if let Some((a_t, b_t, c_t)) = rec.rn_g1 {
        let a = BivarPoly::parse(a_t)?.as_univariate_x().unwrap();
        let b = BivarPoly::parse(b_t)?.as_univariate_x().unwrap();
        let c = BivarPoly::parse(c_t)?.as_univariate_x().unwrap();
        let diff = match &result.jrep.collapsed {
            Some(rn) => {
                if rn.num.len() == 2 && rn.num[0] == a && rn.num[1] == b && rn.den == c {
                    None
                } else {
                    Some(format!(
                        "computed A = {}; B = {}; C = {}",
                        uni_text(&rn.num[0]),
                        uni_text(rn.num.get(1).map(|v| &v[..]).unwrap_or(&[])),
                        uni_text(&rn.den)
                    ))
                }
            }
            None => Some("no collapsed form".into()),
        };
        report.push("R_N (A, B, C)", diff);
    }

    for (idx, u, d, text) in rec.expansions {
        let name = format!("expansion F{} at <{}/{}>", idx + 1, u, d);
        if *idx >= result.system.funcs.len() {
            report.push(name, Some("generator index out of range".into()));
            continue;
        }
        let expected = parse_qz_series(result.n, text)?;
        let max_e = expected.last().map(|(e, _)| *e).unwrap_or(0);
        let class = cusp_class_of(*u, *d as i64, result.n)?;
        let series = crate::weier::expansion_at(&result.system.funcs[*idx], &class, max_e + 1)?;
        let mut diff = None;
        let min_e = expected.first().map(|(e, _)| *e).unwrap_or(0);
        if series.valuation() < min_e {
            diff = Some(format!(
                "valuation {} below expected {min_e}",
                series.valuation()
            ));
        } else {
            let lookup: BTreeMap<i64, CycNum> = expected.into_iter().collect();
            for e in min_e..=max_e {
                let want = lookup
                    .get(&e)
                    .cloned()
                    .unwrap_or_else(|| CycNum::zero(result.n));
                let got = series.coeff(e).unwrap_or_else(|| CycNum::zero(result.n));
                if got != want {
                    diff = Some(format!(
                        "coefficient of q^{e}: computed {}, recorded {}",
                        got.text(),
                        want.text()
                    ));
                    break;
                }
            }
        }
        report.push(name, diff);
    }

    for (x_t, y_t, j_t) in rec.j_values {
        let x = parse_rational(x_t)?;
        let y = parse_rational(y_t)?;
        let name = format!("j({x_t}, {y_t})");
        let diff = match (&result.jrep.collapsed, &result.equation) {
            (Some(rn), Some(eq)) => {
                let got = evaluate_j(eq, rn, &x, &y)?;
                let want = match j_t {
                    Some(v) => JValue::Value(parse_rational(v)?),
                    None => JValue::Cusp,
                };
                if got == want {
                    None
                } else {
                    Some(format!("computed {got:?}, recorded {want:?}"))
                }
            }
            (Some(rn), None) if result.genus == 0 => {
                let got = evaluate_j_genus0(rn, &x);
                let want = match j_t {
                    Some(v) => JValue::Value(parse_rational(v)?),
                    None => JValue::Cusp,
                };
                if got == want {
                    None
                } else {
                    Some(format!("computed {got:?}, recorded {want:?}"))
                }
            }
            _ => Some("no evaluatable representation".into()),
        };
        report.push(name, diff);
    }

    if !rec.relations.is_empty() {
        for (i, row_text) in rec.relations.iter().enumerate() {
            let name = format!("relation row {}", i + 1);
            if i >= result.rows.len() {
                report.push(name, Some("row not computed".into()));
                continue;
            }
            let want = canon_multi(&MultiPoly::parse(row_text, &fnames[..result.genus as usize + 1])?);
            let got = canon_multi(&result.rows[i].as_multipoly(result.genus));
            let diff = if got == want {
                None
            } else {
                Some(format!("computed {:?}", got))
            };
            report.push(name, diff);
        }
    }

    if let Some(delta_t) = rec.delta {
        let want = BivarPoly::parse(delta_t)?;
        let diff = match &result.delta {
            Some(d) if *d == want => None,
            Some(d) if canon(d) == canon(&want) => {
                Some("matches only up to a scalar".into())
            }
            Some(d) => Some(format!("computed {}", d.text())),
            None => Some("Delta not computed".into()),
        };
        report.push("Delta", diff);
    }

    for (k, u_text) in rec.u_list.iter().enumerate() {
        let name = format!("U_{}", k + 3);
        let want = BivarPoly::parse(u_text)?;
        let diff = match result.h_reps.get(k) {
            Some(rep) if rep.u == want => None,
            Some(rep) if canon(&rep.u) == canon(&want) => {
                Some("matches only up to a scalar".into())
            }
            Some(rep) => Some(format!("computed {}", rep.u.text())),
            None => Some("not computed".into()),
        };
        report.push(name, diff);
    }

    if !rec.c_list.is_empty() {
        let top = result.genus as usize; // F_{g+1} is the last variable
        for (i, c_text) in rec.c_list.iter().enumerate() {
            let name = format!("C_{i}");
            let want = MultiPoly::parse(c_text, &fnames[..result.genus as usize])?;
            // coefficient of F_{g+1}^i, restricted to the lower generators
            let got_full = result.jrep.p_n.coeff_of(top, i as u16);
            let mut got = MultiPoly::zero(result.genus as usize);
            let mut overflow = false;
            for (e, c) in got_full.terms() {
                if e[top] != 0 {
                    overflow = true;
                    break;
                }
                got.add_term(e[..top].to_vec(), c.clone());
            }
            let diff = if overflow {
                Some("coefficient still involves the top generator".into())
            } else if got == want {
                None
            } else {
                Some(format!("computed {:?}", got))
            };
            report.push(name, diff);
        }
    }

    if let Some(den_t) = rec.killer_den {
        let want = canon(&BivarPoly::parse(den_t)?);
        let mut got = BivarPoly::one();
        let mut beyond_f1 = false;
        for (g0, m) in &result.jrep.groups {
            let mut uni = BivarPoly::zero();
            for (e, c) in g0.terms() {
                if e[1..].iter().any(|&x| x != 0) {
                    beyond_f1 = true;
                }
                uni = uni.add(&BivarPoly::monomial(0, e[0] as u32, c.clone()));
            }
            got = got.mul(&uni.pow(*m));
        }
        let diff = if beyond_f1 {
            Some("killer product involves generators beyond F_1".into())
        } else if canon(&got) == want {
            None
        } else {
            Some(format!("computed {}", canon(&got).text()))
        };
        report.push("killer denominator", diff);
    }

    Ok(report)
}

/// Verify a level against its corpus record, choosing the deepest check the
/// record supports: a full pipeline run for complete generator sets, an
/// equation-only comparison when the record lists just F_1, F_2 (the
/// higher-genus rows), or a generator-system validation when only the
/// expressions are recorded.
pub fn verify_level(n: u32) -> Result<VerifyReport> {
    let rec = record(n).ok_or_else(|| Error::stage("verify", format!("no record for N={n}")))?;
    let g = genus0(n);
    let complete = rec.generators.len() as u32 == g + 1;
    let has_outputs =
        rec.equation.is_some() || rec.rn_g0.is_some() || rec.rn_g1.is_some();

    if complete && has_outputs {
        let mut cfg = PipelineConfig::new(n);
        cfg.use_paper_generators = true;
        let result = run(&cfg)?;
        return verify_against_paper(&result, rec);
    }
    if complete {
        // Generator-list-only record: validate the system (pole orders,
        // leading coefficients, regularity away from P).
        let sys = paper_generators(n)?;
        let violations = verify_system(&sys)?;
        let mut report = VerifyReport { n, checks: vec![] };
        report.push(
            "generator system",
            if violations.is_empty() {
                None
            } else {
                Some(violations.join("; "))
            },
        );
        return Ok(report);
    }
    // Partial record: the first two generators pin the defining equation.
    if rec.generators.len() >= 2 && rec.equation.is_some() && g >= 1 {
        let funcs = rec.generators[..2]
            .iter()
            .map(|s| ModFuncExpr::parse(n, s))
            .collect::<Result<Vec<_>>>()?;
        let mut normalized = Vec::new();
        for f in funcs {
            let head = crate::weier::trace_expansion_at_p(&f, 2)?;
            let lead = head
                .leading()
                .cloned()
                .ok_or_else(|| Error::stage("verify", "generator expands to zero"))?;
            normalized.push(f.scaled(&(BigRational::one() / lead)));
        }
        let gi = g as i64;
        let unknowns_eq: i64 = (0..=gi).map(|j| gi + 2 - j).sum();
        let prec = -(gi + 1) * (gi + 2) + 1 + unknowns_eq + 25 + (gi + 1) * (gi + 2) + 2;
        let f1 = crate::weier::trace_expansion_at_p(&normalized[0], prec)?;
        let f2 = crate::weier::trace_expansion_at_p(&normalized[1], prec)?;
        let eq = minimal_equation(&f1, &f2, g)?;
        let want = BivarPoly::parse(rec.equation.unwrap())?;
        let mut report = VerifyReport { n, checks: vec![] };
        if canon(&eq) == canon(&want) {
            report.push("equation", None);
        } else {
            // The published rows are not all written in the monic,
            // constant-pinned coordinates; an affine renormalization
            // X -> X + a, Y -> Y + alpha X + beta is the exact residual
            // freedom of the minimal-equation shape.
            let a_candidates = shift_candidates(n, rec, &normalized[0])?;
            match equation_renormalization(&eq, &want, g, &a_candidates) {
                Some((a, al, be)) => {
                    report.push(
                        format!(
                            "equation (matches after X -> X + {}, Y -> Y + {}*X + {})",
                            rational_str(&a),
                            rational_str(&al),
                            rational_str(&be)
                        ),
                        None,
                    );
                }
                None => {
                    report.push(
                        "equation",
                        Some(format!("computed {}", canon(&eq).text())),
                    );
                }
            }
        }
        return Ok(report);
    }
    let mut report = VerifyReport { n, checks: vec![] };
    report.push(
        "record",
        Some(format!(
            "record lists {} generator expressions for {} slots; nothing comparable",
            rec.generators.len(),
            g + 1
        )),
    );
    Ok(report)
}

/// Candidate X-shifts relating our monic generator to a published row:
/// differences between our F_1 cusp constants and the rational roots of the
/// row's denominator (which are the published generator's cusp constants).
fn shift_candidates(n: u32, rec: &PaperRecord, f1: &ModFuncExpr) -> Result<Vec<Rational>> {
    let mut ours: Vec<Rational> = vec![];
    for q in cusps_gamma0(n)? {
        if q.is_p() {
            continue;
        }
        let s = crate::weier::expansion_at(f1, &q, 1)?;
        if let Some(c) = s.coeff(0) {
            if let Some(r) = c.as_rational() {
                ours.push(r);
            }
        }
    }
    let den_text = rec
        .rn_g2
        .map(|(_, _, _, d)| d)
        .or(rec.rn_g1.map(|(_, _, c)| c))
        .or(rec.killer_den);
    let mut candidates = vec![BigRational::zero()];
    if let Some(text) = den_text {
        if let Some(uni) = BivarPoly::parse(text)?.as_univariate_x() {
            for root in integer_roots(&uni) {
                for c in &ours {
                    // row(X + a) composed over our coordinate needs
                    // a = row_constant - our_constant; keep both signs in
                    // case the pairing of cusps to roots is ambiguous.
                    let r = BigRational::from_integer(root.into());
                    for a in [&r - c, c - &r] {
                        if !candidates.contains(&a) {
                            candidates.push(a);
                        }
                    }
                }
            }
        }
    }
    Ok(candidates)
}

/// Integer roots of a univariate rational polynomial.
fn integer_roots(p: &[Rational]) -> Vec<i64> {
    let mut roots = vec![];
    let mut p = p.to_vec();
    while p.first().map_or(false, |c| c.is_zero()) {
        p.remove(0);
        if !roots.contains(&0) {
            roots.push(0);
        }
    }
    let eval = |x: i64| -> Rational {
        let xr = rat_i64(x);
        let mut acc = BigRational::zero();
        for c in p.iter().rev() {
            acc = acc * &xr + c;
        }
        acc
    };
    if let Some(c0) = p.first() {
        if !c0.is_zero() {
            // candidates: divisors of the integer-cleared constant term
            let l = crate::exact::denom_lcm(p.iter());
            let c0i = (c0 * BigRational::from_integer(l)).to_integer();
            let mag: i64 = match i64::try_from(c0i.magnitude().clone()) {
                Ok(v) => v.min(1 << 20),
                Err(_) => 1 << 20,
            };
            for d in 1..=mag {
                if d * d > mag {
                    break;
                }
                if mag % d == 0 {
                    for cand in [d, -d, mag / d, -(mag / d)] {
                        if eval(cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots
}

/// Try to identify two monic minimal equations up to the residual affine
/// freedom X -> X + a, Y -> Y + alpha X + beta. Returns the transform that
/// maps `row` onto `ours`.
fn equation_renormalization(
    ours: &BivarPoly,
    row: &BivarPoly,
    g: u32,
    a_candidates: &[Rational],
) -> Option<(Rational, Rational, Rational)> {
    // Normalize the row to the monic shape (its printed sign may be
    // flipped), and admit Y -> -Y when that preserves the shape.
    let lead = row.coeff(g + 1, 0);
    if lead.is_zero() {
        return None;
    }
    let row_monic = row.scale(&(BigRational::one() / lead));
    let mut bases = vec![row_monic.clone()];
    let neg_y = row_monic.compose(&BivarPoly::x(), &BivarPoly::y().neg());
    let neg_lead = neg_y.coeff(g + 1, 0);
    if !neg_lead.is_zero() {
        bases.push(neg_y.scale(&(BigRational::one() / neg_lead)));
    }
    let gp1 = BigRational::from_integer((g as i64 + 1).into());
    for row in &bases {
    for a in a_candidates {
        let x_shift = BivarPoly::x().add(&BivarPoly::constant(a.clone()));
        let row_a = row.compose(&x_shift, &BivarPoly::y());
        // Phi_g of ours = Phi_g of row_a + (g+1)(alpha X + beta).
        let phi_ours = ours.y_coeff_poly(g);
        let phi_row = row_a.y_coeff_poly(g);
        let coeff = |p: &[Rational], k: usize| {
            p.get(k).cloned().unwrap_or_else(BigRational::zero)
        };
        if phi_ours.len() > 2 || phi_row.len() > 2 {
            continue;
        }
        let alpha = (coeff(&phi_ours, 1) - coeff(&phi_row, 1)) / &gp1;
        let beta = (coeff(&phi_ours, 0) - coeff(&phi_row, 0)) / &gp1;
        let y_sub = BivarPoly::y()
            .add(&BivarPoly::x().scale(&alpha))
            .add(&BivarPoly::constant(beta.clone()));
        let transformed = row.compose(&x_shift, &y_sub);
        if transformed == *ours {
            return Some((a.clone(), alpha, beta));
        }
    }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qz_series_parser() {
        let terms = parse_qz_series(14, "-1+8z^2*q^2+8z^3*q^3").unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].0, 0);
        assert_eq!(terms[0].1.as_rational().unwrap(), rat_i64(-1));
        assert_eq!(terms[1].0, 2);
        assert_eq!(terms[1].1, CycNum::zeta_pow(14, 2).scale(&rat_i64(8)));
        let terms = parse_qz_series(52, "q^-7+1/3*q^-5+2q^9").unwrap();
        assert_eq!(terms[0], (-7, CycNum::one(52)));
        assert_eq!(
            terms[1].1.as_rational().unwrap(),
            crate::exact::rat(1, 3)
        );
        assert_eq!(terms[2].0, 9);
    }

    #[test]
    fn pipeline_n14_with_builtin_generators() {
        let mut config = PipelineConfig::new(14);
        config.use_paper_generators = true;
        let result = run(&config).unwrap();
        assert_eq!(result.genus, 1);
        let eq = result.equation.as_ref().unwrap();
        assert_eq!(
            canon(eq).text(),
            canon(&BivarPoly::parse("Y^2+XY-Y-X^3-6X^2-18X-12").unwrap()).text()
        );
        // full corpus diff (the recorded j([5]P) value is known to disagree
        // with the recomputed CM invariant; everything else must pass)
        let report = verify_against_paper(&result, record(14).unwrap()).unwrap();
        for check in &report.checks {
            if check.name == "j(7, -31)" {
                assert!(check.diff.is_some(), "the recorded value differs by a typo");
            } else {
                assert!(
                    check.diff.is_none(),
                    "{}: {:?}",
                    check.name,
                    check.diff
                );
            }
        }
    }

    #[test]
    fn pipeline_n6_matches_table() {
        let mut config = PipelineConfig::new(6);
        config.use_paper_generators = true;
        let result = run(&config).unwrap();
        assert_eq!(result.genus, 0);
        let report = verify_against_paper(&result, record(6).unwrap()).unwrap();
        for check in &report.checks {
            assert!(check.diff.is_none(), "{}: {:?}", check.name, check.diff);
        }
    }
}
