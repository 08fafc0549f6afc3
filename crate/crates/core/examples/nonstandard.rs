//! BS(1,k) over an exponential ring with an infinite element ω: powers with
//! exponents in ℤω + ℤ and the MR-axioms.

use bsinterp::group::GroupElement;
use bsinterp::nonstd::{
    bs_nonstd, expring_laws_suite, ExpRing, mr_axiom_suite, mr_samples_symbolic, zexp_pow, SymExp, SymExpo, SymRing,
};

fn main() -> bsinterp::Result<()> {
    let ring = SymRing::new(2)?;
    let exps: Vec<SymExpo> = (-1..=1).flat_map(|a| (-2..=2).map(move |b| SymExpo::new(a, b))).collect();
    let laws = expring_laws_suite(&ring, &exps);
    println!("{}: {} law instances, {} violations", ring.name(), laws.checked, laws.violations.len());

    let g = bs_nonstd(ring, &exps)?;
    let f = g.ring();
    let a = GroupElement::new(f.from_base(SymExp::int(1)), SymExpo::int(0));
    let b_omega = GroupElement::new(f.from_base(SymExp::zero()), SymExpo::omega());
    println!("b^-w a b^w = {}", g.conj(&a, &b_omega));
    let x = GroupElement::new(f.from_base(SymExp::int(1)), SymExpo::int(1));
    println!("(1, 1)^w = {}", zexp_pow(&g, &x, &SymExpo::omega())?);

    let samples = mr_samples_symbolic(&g, 50, 0);
    let report = mr_axiom_suite(&g, &samples);
    println!(
        "MR-axioms: {} samples, {} checked, {} undefined, {} violations",
        report.samples,
        report.checked,
        report.skipped,
        report.violations.len()
    );
    Ok(())
}
