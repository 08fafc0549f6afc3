//! Parsing, printing and bounded evaluation of first-order formulas.

use bsinterp::fol::{parse_formula, Evaluator, GroupBox, GroupStructure, IntegerStructure, Language};
use bsinterp::group::BsGroup;
use num_bigint::BigInt;

fn main() -> bsinterp::Result<()> {
    let g = BsGroup::new(2)?;
    let s = GroupStructure::new(g.clone(), GroupBox::new(3, 2, 2));
    let ev = Evaluator::new(&s);

    // a universal over the infinite group stays open unless a box element refutes it
    let alpha = parse_formula("A y . ([inv(y)*x*y, x] = e)", Language::Group)?;
    println!("alpha(x) = {alpha}");
    for x in [g.a(), g.b(), g.elem(3, 1, 0)] {
        println!("  alpha({x}): {}", ev.evaluate(&alpha, &[("x".into(), x.clone())])?);
    }

    let root = parse_formula("E u . (u * u = x)", Language::Group)?;
    for x in [g.pow(&g.b(), 4), g.b()] {
        println!("  {root} at x = {x}: {}", ev.evaluate(&root, &[("x".into(), x.clone())])?);
    }

    // over ℤ, equations are solved rather than enumerated
    let z = IntegerStructure::new(5);
    let ev = Evaluator::new(&z);
    let div = parse_formula("E q . (q * 7 = n)", Language::Ring)?;
    for n in [63, 64] {
        println!("  {div} at n = {n}: {}", ev.evaluate(&div, &[("n".into(), BigInt::from(n))])?);
    }
    Ok(())
}
