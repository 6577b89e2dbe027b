use x0n::weier::{trace_expansion_at_p, ModFuncExpr};

fn main() {
    for s in ["2-1/4*T[12,2,6,2]*[14,2,4,2]", "T[8,2,13,2]"] {
        let e = ModFuncExpr::parse(32, s).unwrap();
        let se = trace_expansion_at_p(&e, 3).unwrap();
        println!("{s}: val {} lead {} q0 {}", se.valuation(), se.leading().unwrap(),
                 se.coeff(0).unwrap());
    }
}
