use x0n::series::{LaurentSeries, VarTag};
use num_rational::BigRational;
use num_traits::One;

fn main() {
    let tag = VarTag::new(1, 1);
    let prec = 12i64;
    // pentagonal euler from the crate's internal path: recompute here
    let j = x0n::jrep::j_expansion(6);
    println!("j = {}", j.text());
    let mut euler = LaurentSeries::constant(tag, BigRational::one(), prec);
    for k in 1..prec {
        let mut v = vec![BigRational::zero(); k as usize + 1];
        v[0] = BigRational::one();
        v[k as usize] = -BigRational::one();
        use num_traits::Zero;
        let factor = LaurentSeries::from_coeffs(tag, 0, prec, v);
        euler = euler.mul(&factor).unwrap().truncate(prec);
    }
    println!("euler oracle = {}", euler.text());
}
