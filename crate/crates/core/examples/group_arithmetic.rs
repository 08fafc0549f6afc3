//! Elements of BS(1,k) as pairs `(y, m)`: products, powers, commutators and words.

use std::collections::HashMap;

use bsinterp::group::{BsGroup, GroupWord};

fn main() -> bsinterp::Result<()> {
    let g = BsGroup::new(2)?;
    let (a, b) = (g.a(), g.b());
    println!("a = {a}, b = {b}");
    println!("b·a = {}", g.mul(&b, &a));
    println!("b⁻¹ab = {} = a^2", g.conj(&a, &b));

    let x = g.elem(1, 0, 1);
    println!("{x}⁻¹ = {}", g.inv(&x));
    for n in [3, -2, 10] {
        println!("{x}^{n} = {}", g.pow(&x, n));
    }
    println!("[a, b] = {}", g.comm(&a, &b));
    println!("conjugate of a by (5, 3): {}", g.conj(&a, &g.elem(5, 0, 3)));

    let bindings = HashMap::from([("a".to_string(), a), ("b".to_string(), b)]);
    for src in ["a^2 b^-1 a^-2 b", "inv(b) a b a^-2", "a^-1 b^-1 a b"] {
        let w: GroupWord = src.parse()?;
        println!("{src:>22} = {}", w.eval(&g, &bindings)?);
    }
    Ok(())
}
