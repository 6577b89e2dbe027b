use x0n::modcurve::cusps_gamma0;
use x0n::weier::{trace_expansion, trace_expansion_at_p, ModFuncExpr};

fn main() {
    let f1 = ModFuncExpr::parse(21, "-1/2*T[5,1,2,1]").unwrap();
    let f2 = ModFuncExpr::parse(21, "T[6,1,9,1]").unwrap();
    for q in cusps_gamma0(21).unwrap() {
        if q.is_p() { continue; }
        let s1 = trace_expansion(&f1, &q, 3).unwrap();
        let s2 = trace_expansion(&f2, &q, 3).unwrap();
        println!("{}: F1 = {}", q.label(), s1.text());
        println!("{}: F2 = {}", q.label(), s2.text());
    }
    // first coefficients at P
    let s1 = trace_expansion_at_p(&f1, 8).unwrap();
    let s2 = trace_expansion_at_p(&f2, 8).unwrap();
    println!("P: F1 = {}", s1.text());
    println!("P: F2 = {}", s2.text());
}
