//! ℤ[1/k] normal forms, divisibility, units, and the divisibility facts
//! behind the interpretation.

use bsinterp::rings::{
    cor1_witness, cor2_residue, fact1_witness, sn_witness, LaurentPoly, RingContext,
};

fn main() -> bsinterp::Result<()> {
    let k2 = RingContext::new(2)?;
    let sum = &k2.normalize(3.into(), 1) + &k2.normalize(1.into(), 2);
    println!("3·2⁻¹ + 2⁻² = {sum}");

    let k6 = RingContext::new(6)?;
    let half = k6.int(2).divides(&k6.one())?;
    println!("1/2 in ℤ[1/6]: {half:?}");
    println!("1/2 in ℤ[1/3]: {:?}", RingContext::new(3)?.int(2).divides(&RingContext::new(3)?.one())?);
    for n in [4, 5, 12, 35] {
        println!("{n} is a unit of ℤ[1/6]: {}", k6.int(n).is_unit());
    }

    // k^n - 1 divides k^m - 1 exactly when n divides m
    for (n, m) in [(2, 6), (4, 6), (-3, 6)] {
        let q = k2.k_pow_minus_one(n).divides(&k2.k_pow_minus_one(m))?;
        println!("2^{n} - 1 | 2^{m} - 1: {}", q.map_or("no".into(), |q| format!("quotient {q}")));
    }
    let q = LaurentPoly::x_pow_minus_one(2).divides(&LaurentPoly::x_pow_minus_one(6))?;
    println!("(x^6 - 1)/(x^2 - 1) = {}", q.expect("2 | 6"));
    println!("g for n = 2, l = -1: {}", cor1_witness(2, -1));

    println!("(2^6 - 1)/(2^2 - 1) = {}", cor2_residue(&k2, 3, 2)?);
    println!("least n with 2^n - 1 not dividing 6: {:?}", fact1_witness(&k2.int(6), 10));
    println!("s_1(l=1, z=2, t=2) = {:?}", sn_witness(&k2.one(), 2, &k2.int(2), 1)?);
    println!("s_2(l=1, z=2, t=3) = {:?}", sn_witness(&k2.one(), 2, &k2.int(3), 2)?);
    Ok(())
}
