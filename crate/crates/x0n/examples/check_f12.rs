use x0n::weier::*;
use x0n::modcurve::cusps_gamma0;
use x0n::exact::rat_i64;
use num_rational::BigRational;
use num_traits::One;

fn main() {
    let e = ModFuncExpr::parse(14, "T[5,1,2,1]").unwrap();
    // normalize by leading coeff at P
    let sp = trace_expansion_at_p(&e, 4).unwrap();
    let lead = sp.coeff(sp.valuation()).unwrap();
    println!("leading at P: {}", lead);
    let scale = BigRational::one() / lead;
    let q2 = cusps_gamma0(14).unwrap().into_iter().find(|c| c.d == 2).unwrap();
    println!("cusp: {:?}", q2);
    let s = trace_expansion(&e, &q2, 5).unwrap().scale(&scale);
    println!("F1 at <1/2>: {}", s.text());
    let q7 = cusps_gamma0(14).unwrap().into_iter().find(|c| c.d == 7).unwrap();
    let s7 = trace_expansion(&e, &q7, 3).unwrap().scale(&scale);
    println!("F1 at <1/7>: {}", s7.text());
    let q14 = cusps_gamma0(14).unwrap().into_iter().find(|c| c.d == 14).unwrap();
    let s14 = trace_expansion(&e, &q14, 2).unwrap().scale(&scale);
    println!("F1 at <1/14>: {}", s14.text());
    // F2
    let e2 = ModFuncExpr::parse(14, "T[4,1,3,1]*[5,1,2,1]").unwrap();
    let sp2 = trace_expansion_at_p(&e2, 4).unwrap();
    println!("F2 at P: val {} lead {}", sp2.valuation(), sp2.coeff(sp2.valuation()).unwrap());
    let s2 = trace_expansion(&e2, &q2, 4).unwrap();
    println!("F2 at <1/2>: {}", s2.text());
    let s27 = trace_expansion(&e2, &q7, 2).unwrap();
    println!("F2 at <1/7>: {}", s27.text());
    let s214 = trace_expansion(&e2, &q14, 2).unwrap();
    println!("F2 at <1/14>: {}", s214.text());
    let _ = rat_i64(0);
}
