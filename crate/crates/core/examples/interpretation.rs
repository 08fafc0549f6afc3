//! The interpretation Δ of BS(1,k) in ℤ, the interpretation Γ of ℤ in
//! BS(1,k), translation of formulas, and composition of codes.

use bsinterp::definable::definitions;
use bsinterp::fol::{parse_formula, Language};
use bsinterp::group::BsGroup;
use bsinterp::interp::{
    check_corpus, code_delta, code_gamma, compose, mu_delta, mu_delta_section, translate, translate_expanded,
    CorpusBox, Triple,
};

fn main() -> bsinterp::Result<()> {
    let k = 2;
    let g = BsGroup::new(k as i64)?;
    let x = mu_delta(&g, &Triple::new(3, -1, 2));
    println!("mu_delta(3, -1, 2) = {x}, canonical preimage {}", mu_delta_section(&x));

    let delta = code_delta(k)?;
    let gamma = code_gamma(k)?;
    println!("Delta: dim {}, parameters {}", delta.dim(), delta.dim_par());
    println!("Gamma: dim {}, parameters {}", gamma.dim(), gamma.dim_par());

    let phi = parse_formula("x * y = y * x", Language::Group)?;
    println!("{phi}\n  through Delta: {}", translate(&phi, &delta)?);
    let psi = parse_formula("x + 1 = y", Language::Ring)?;
    println!("{psi}\n  through Gamma: {}", translate_expanded(&psi, &gamma, &definitions(k)?)?);

    for (name, c) in [("Gamma∘Delta", compose(&gamma, &delta)?), ("Delta∘Gamma", compose(&delta, &gamma)?)] {
        println!("{name}: dim {}, parameters {}", c.dim(), c.dim_par());
    }

    let report = check_corpus(k, &CorpusBox::default())?;
    println!("corpus: {} instances, {} violations", report.checked, report.violations.len());
    Ok(())
}
