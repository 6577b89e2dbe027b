use x0n::relations::BivarPoly;
use x0n::weier::{trace_expansion_at_p, ModFuncExpr};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn main() {
    for (label, f1s, f2s) in [
        ("N=21", "-1/2*T[5,1,2,1]", "T[6,1,9,1]"),
    ] {
        let f1e = ModFuncExpr::parse(21, f1s).unwrap();
        let f2e = ModFuncExpr::parse(21, f2s).unwrap();
        let s1 = trace_expansion_at_p(&f1e, 20).unwrap();
        let s2 = trace_expansion_at_p(&f2e, 20).unwrap();
        println!("{label}: F1 literal: val {} lead {} next coeffs: {} {} {}", s1.valuation(),
            s1.leading().unwrap(), s1.coeff(-1).unwrap(), s1.coeff(0).unwrap(), s1.coeff(1).unwrap());
        println!("{label}: F2 literal: val {} lead {} next: {} {} {}", s2.valuation(),
            s2.leading().unwrap(), s2.coeff(-2).unwrap(), s2.coeff(-1).unwrap(), s2.coeff(0).unwrap());
        let eq = BivarPoly::parse("Y^2-X^3+5*X*Y+6*X^2-10*Y-21*X+26").unwrap();
        let tag = s1.tag();
        for (sx, sy) in [(1i64,1i64),(1,-1),(-1,1),(-1,-1)] {
            let x = s1.scale(&BigRational::from_integer(sx.into()));
            let y = s2.scale(&BigRational::from_integer(sy.into()));
            let r = eq.eval_series(tag, &x, Some(&y), &BigRational::zero()).unwrap();
            println!("  paper eq on ({sx}X_lit, {sy}Y_lit): {}", if r.is_zero() { "ZERO".to_string() } else { format!("val {}", r.valuation()) });
        }
        // also with normalized (monic) versions
        let n1 = s1.scale(&(BigRational::one() / s1.leading().unwrap().clone()));
        let n2 = s2.scale(&(BigRational::one() / s2.leading().unwrap().clone()));
        let r = eq.eval_series(tag, &n1, Some(&n2), &BigRational::zero()).unwrap();
        println!("  paper eq on (monic X, monic Y): {}", if r.is_zero() { "ZERO".into() } else { format!("val {}", r.valuation()) });
    }
}
