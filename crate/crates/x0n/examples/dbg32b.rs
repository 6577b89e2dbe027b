use x0n::pipeline::{run, PipelineConfig};
use x0n::weier::{trace_expansion, trace_expansion_at_p, ModFuncExpr};
use x0n::modcurve::cusps_gamma0;

fn main() {
    let f1 = ModFuncExpr::parse(32, "3-1/4*T[12,2,6,2]*[14,2,4,2]").unwrap();
    let s = trace_expansion_at_p(&f1, 3).unwrap();
    println!("F1 head: val {} lead {} q^-1 {} q0 {}", s.valuation(), s.leading().unwrap(), s.coeff(-1).unwrap(), s.coeff(0).unwrap());
    for q in cusps_gamma0(32).unwrap() {
        if q.is_p() { continue; }
        let sq = trace_expansion(&f1, &q, 2).unwrap();
        println!("  const at {}: {}", q.label(), sq.coeff(0).map(|c| c.text()).unwrap_or_default());
    }
    let mut cfg = PipelineConfig::new(32);
    cfg.use_paper_generators = true;
    let r = run(&cfg).unwrap();
    println!("equation: {}", r.equation.as_ref().unwrap().text());
    for (g, m) in &r.jrep.groups {
        println!("killer factor ^{m}: {:?}", g);
    }
}
