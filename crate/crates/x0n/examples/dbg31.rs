use x0n::weier::{expansion_at, trace_expansion_at_p, ModFuncExpr};
use x0n::modcurve::cusps_gamma0;
use num_rational::BigRational;
use num_traits::One;

fn main() {
    let f1 = ModFuncExpr::parse(31, "10+T[4,2,9,2]*[9,1,4,1]").unwrap();
    let f2 = ModFuncExpr::parse(31, "-22+T[3,2,5,2]*[5,1,3,1]+T[4,2,9,2]*[9,1,4,1]").unwrap();
    for (name, f) in [("F1", &f1), ("F2", &f2)] {
        let s = trace_expansion_at_p(f, 2).unwrap();
        println!("{name}: val {} lead {} q0 {}", s.valuation(), s.leading().unwrap(), s.coeff(0).unwrap());
        let lead = s.leading().unwrap().clone();
        let fn_ = f.scaled(&(BigRational::one() / lead));
        for q in cusps_gamma0(31).unwrap() {
            if q.is_p() { continue; }
            let sq = expansion_at(&fn_, &q, 2).unwrap();
            println!("  {name} at {}: {}", q.label(), sq.text());
        }
    }
}
