//! Command-line interface.
//!
//! Exit codes: 0 on success, 2 when `verify` reports a diff, 1 on error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use x0n::exact::{parse_rational, rational_str};
use x0n::jrep::JValue;
use x0n::modcurve::{cusp_class_of, cusps_gamma0, genus0, w_order, WVector};
use x0n::pipeline::{self, PipelineConfig};
use x0n::relations::BivarPoly;
use x0n::search::{search_generators, verify_system, SearchBounds};
use x0n::weier::{expansion_at, ModFuncExpr};

#[derive(Parser)]
#[command(
    name = "x0n",
    about = "Exact arithmetic for the modular function field of Gamma_0(N): \
             generators, plane models of X_0(N), and the modular invariant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BoundsArgs {
    /// Extra depth below -(2g+1) admitted in the pole-order filter.
    #[arg(long)]
    slack: Option<i64>,
    /// Cap on the filtered candidate pool.
    #[arg(long, default_value_t = 4000)]
    pool_cap: usize,
    /// Levels above this skip the quadratic double-trace family.
    #[arg(long, default_value_t = 26)]
    family_a_max_level: u32,
}

impl BoundsArgs {
    fn to_bounds(&self) -> SearchBounds {
        SearchBounds {
            slack: self.slack,
            pool_cap: self.pool_cap,
            family_a_max_level: self.family_a_max_level,
        }
    }
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Use the built-in generator system for this level.
    #[arg(long)]
    use_paper_generators: bool,
    /// Load generators from a JSON file instead of searching.
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Guard coefficients past every solve (minimum 10).
    #[arg(long, default_value_t = 25)]
    prec_guard: i64,
    #[command(flatten)]
    bounds: BoundsArgs,
}

impl RunArgs {
    fn to_config(&self, n: u32) -> PipelineConfig {
        PipelineConfig {
            n,
            precision_guard: self.prec_guard,
            bounds: self.bounds.to_bounds(),
            use_paper_generators: self.use_paper_generators,
            generator_file: self.generators.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Genus of X_0(N).
    Genus { n: u32 },
    /// Cusp classes of Gamma_0(N).
    Cusps {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Order of the modular unit W_a at a Gamma_1(N) cusp (u:t).
    Order {
        n: u32,
        /// Vector a1,a2,a3,a4.
        #[arg(long)]
        vec: String,
        /// Cusp u,t.
        #[arg(long)]
        cusp: String,
    },
    /// Expand a trace expression at a cusp class.
    Expand {
        n: u32,
        /// Expression, e.g. "T[5,1,2,1]" or "-3 + T[4,1,3,1]*[5,1,2,1]".
        #[arg(long)]
        expr: String,
        /// Cusp u,t (mapped to its Gamma_0(N) class).
        #[arg(long, default_value = "1,1")]
        cusp: String,
        /// Precision in local-parameter exponents.
        #[arg(long, default_value_t = 40)]
        prec: i64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a generator system.
    Generators {
        n: u32,
        /// Write the system to a JSON file.
        #[arg(long)]
        save: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Compute the plane model F_N(X, Y) = 0.
    Equation {
        n: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compute the representation of the modular invariant.
    Jrep {
        n: u32,
        /// Emit the collapsed R_N(X,Y) (automatic for genus <= 1).
        #[arg(long)]
        collapse: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate the j-invariant at a rational point of the model.
    Eval {
        n: u32,
        /// Point "x,y" (or just "x" for genus 0).
        #[arg(long)]
        point: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a level against the embedded regression corpus.
    Verify { n: u32 },
}

fn parse_csv<const K: usize>(s: &str) -> Result<[i64; K], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != K {
        return Err(format!("expected {K} comma-separated integers, got `{s}`"));
    }
    let mut out = [0i64; K];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|_| format!("bad integer `{p}`"))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> x0n::Result<ExitCode> {
    match cli.command {
        Command::Genus { n } => {
            println!("{}", genus0(n));
        }
        Command::Cusps { n, json } => {
            let cusps = cusps_gamma0(n)?;
            if json {
                let items: Vec<serde_json::Value> = cusps
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "u": c.u, "D": c.d, "width": c.width, "d": c.dd,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string(&items)?);
            } else {
                for c in cusps {
                    println!(
                        "<{}/{}>  width {}  B = [[{}, {}], [{}, {}]]",
                        c.u,
                        c.d,
                        c.width,
                        c.u,
                        (c.u * c.dd - 1) / c.d as i64,
                        c.d,
                        c.dd
                    );
                }
            }
        }
        Command::Order { n, vec, cusp } => {
            let a = parse_csv::<4>(&vec).map_err(x0n::Error::Parse)?;
            let [u, t] = parse_csv::<2>(&cusp).map_err(x0n::Error::Parse)?;
            let w = WVector::new(n, a)?;
            cusp_class_of(u, t, n)?; // validate the cusp
            println!("{}", w_order(&w, t));
        }
        Command::Expand {
            n,
            expr,
            cusp,
            prec,
            json,
        } => {
            let e = ModFuncExpr::parse(n, &expr)?;
            let [u, t] = parse_csv::<2>(&cusp).map_err(x0n::Error::Parse)?;
            let class = cusp_class_of(u, t, n)?;
            let series = expansion_at(&e, &class, prec)?;
            if json {
                println!("{}", serde_json::to_string(&series.to_json())?);
            } else {
                println!("{}", series.text());
            }
        }
        Command::Generators { n, save, bounds } => {
            let system = search_generators(n, &bounds.to_bounds())?;
            let violations = verify_system(&system)?;
            if !violations.is_empty() {
                return Err(x0n::Error::SearchFailed(violations.join("; ")));
            }
            let json = serde_json::to_string_pretty(&system.to_json())?;
            if let Some(path) = save {
                std::fs::write(&path, &json)?;
                eprintln!("wrote {}", path.display());
            }
            println!("{json}");
        }
        Command::Equation { n, run } => {
            let result = pipeline::run(&run.to_config(n))?;
            match &result.equation {
                Some(eq) => println!("{}", eq.canonical_integer().0.text()),
                None => println!("genus 0: function field generated by F_1 alone"),
            }
        }
        Command::Jrep { n, collapse, run } => {
            let result = pipeline::run(&run.to_config(n))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&jrep_json(&result, collapse))?
            );
        }
        Command::Eval { n, point, run } => {
            let result = pipeline::run(&run.to_config(n))?;
            let rn = result.jrep.collapsed.as_ref().ok_or_else(|| {
                x0n::Error::stage(
                    "eval",
                    "no collapsed representation at this genus; use jrep output",
                )
            })?;
            let value = if result.genus == 0 {
                let x = parse_rational(&point)?;
                x0n::jrep::evaluate_j_genus0(rn, &x)
            } else {
                let parts: Vec<&str> = point.split(',').collect();
                if parts.len() != 2 {
                    return Err(x0n::Error::Parse(format!("expected x,y got `{point}`")));
                }
                let x = parse_rational(parts[0])?;
                let y = parse_rational(parts[1])?;
                let eq = result
                    .equation
                    .as_ref()
                    .expect("genus >= 1 always has an equation");
                x0n::jrep::evaluate_j(eq, rn, &x, &y)?
            };
            match value {
                JValue::Value(v) => println!("{}", rational_str(&v)),
                JValue::Cusp => println!("cusp (j = infinity)"),
                JValue::Undefined => println!("undefined (singular point of the model)"),
            }
        }
        Command::Verify { n } => {
            let report = pipeline::verify_level(n)?;
            let mut failed = 0;
            for check in &report.checks {
                match &check.diff {
                    None => println!("[pass] {}", check.name),
                    Some(d) => {
                        failed += 1;
                        println!("[diff] {}: {}", check.name, d);
                    }
                }
            }
            if failed > 0 {
                println!("{failed} of {} checks differ", report.checks.len());
                return Ok(ExitCode::from(2));
            }
            println!("all {} checks pass", report.checks.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn jrep_json(result: &pipeline::PipelineResult, collapse: bool) -> serde_json::Value {
    let g = result.genus as usize;
    let fnames: Vec<String> = (1..=g + 1).map(|i| format!("F{i}")).collect();
    let frefs: Vec<&str> = fnames.iter().map(|s| s.as_str()).collect();
    let killer_text = |p: &x0n::relations::MultiPoly| {
        if p.terms().all(|(e, _)| e[1..].iter().all(|&x| x == 0)) {
            // univariate in F_1: print in X
            let mut bp = BivarPoly::zero();
            for (e, c) in p.terms() {
                bp = bp.add(&BivarPoly::monomial(0, e[0] as u32, c.clone()));
            }
            bp.text()
        } else {
            p.text(&frefs)
        }
    };
    let killers: Vec<serde_json::Value> = result
        .jrep
        .killers
        .iter()
        .map(|k| {
            serde_json::json!({
                "cusp": {"u": k.cusp.u, "D": k.cusp.d},
                "G": killer_text(&k.g),
                "zero_order": k.zero_order,
                "pole_J": k.pole_j,
                "m": result
                    .jrep
                    .groups
                    .iter()
                    .find(|(g0, _)| *g0 == k.g)
                    .map(|(_, m)| *m)
                    .unwrap_or(k.m_required),
            })
        })
        .collect();
    let mut out = serde_json::json!({
        "N": result.n,
        "genus": result.genus,
        "generators": result.system.funcs.iter().map(|f| f.text()).collect::<Vec<_>>(),
        "killers": killers,
        "P_N": result.jrep.p_n.text(&frefs),
    });
    if let Some(eq) = &result.equation {
        out["F_N"] = eq.canonical_integer().0.text().into();
    }
    if let Some(d) = &result.delta {
        out["Delta"] = d.text().into();
        out["U"] = result
            .h_reps
            .iter()
            .map(|r| r.u.text())
            .collect::<Vec<_>>()
            .into();
    }
    if let Some(rn) = &result.jrep.collapsed {
        let num: Vec<String> = rn
            .num
            .iter()
            .map(|p| BivarPoly::from_univariate_x(p).text())
            .collect();
        let den = match &rn.den_factors {
            Some(factors) => factors
                .iter()
                .map(|(f, m)| {
                    let t = f.text();
                    let wrapped = if t.contains(' ') { format!("({t})") } else { t };
                    if *m == 1 {
                        wrapped
                    } else {
                        format!("{wrapped}^{m}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*"),
            None => BivarPoly::from_univariate_x(&rn.den).text(),
        };
        out["R_N"] = serde_json::json!({"num": num, "den": den});
    } else if collapse {
        out["R_N"] = serde_json::json!({
            "note": "collapse to (X, Y) is only emitted for genus <= 1; \
                     use P_N with the H_i substitutions",
        });
    }
    out
}
