//! The injective interpretation `Γ` of ℤ in BS(1,k) on `⟨b₁⟩`.

use std::collections::BTreeMap;

use super::{CodeFormula, InterpCode};
use crate::definable::{self, in_a1, witness_check, Name, WitnessConfig};
use crate::error::{Error, Result};
use crate::fol::{parse_formula, Formula, Language, Term, Verdict};
use crate::group::{BsElement, BsGroup};
use crate::rings::RingContext;

fn var(v: &str) -> Term {
    Term::var(v)
}

/// The code `Γ` with parameters `pa`, `pb` (only `pb = b₁` is used).
///
/// Multiplication is the predicate `gamma`, defined in the code's definitions.
/// Exponentiation, an extension of the ring language, goes to the opaque
/// predicate `expg(x, y, z, t)`, decided by the oracles of the `definable`
/// module.
pub fn code_gamma(k: u64) -> Result<InterpCode> {
    RingContext::new(k as i64)?;
    let g = |src: &str| parse_formula(src, Language::Group);
    let mut graphs = BTreeMap::new();
    graphs.insert("add".into(), CodeFormula::new(["x", "y", "o"], g("o = x * y")?));
    graphs.insert(
        "times".into(),
        CodeFormula::new(
            ["x", "y", "o"],
            Formula::pred("gamma", vec![var("x"), var("y"), var("o"), var("pb")]),
        ),
    );
    graphs.insert("zero".into(), CodeFormula::new(["o"], g("o = e")?));
    graphs.insert("one".into(), CodeFormula::new(["o"], g("o = pb")?));
    graphs.insert(
        "exp".into(),
        CodeFormula::new(
            ["x", "y", "z"],
            Formula::pred("expg", vec![var("x"), var("y"), var("z"), var("pb")]),
        ),
    );
    let code = InterpCode {
        name: "gamma".into(),
        source: Language::Ring,
        target: Language::Group,
        coords: vec![String::new()],
        params: vec!["pa".into(), "pb".into()],
        domain: CodeFormula::new(["x"], g("[x, pb] = e")?),
        equiv: CodeFormula::new(["x", "y"], g("x = y")?),
        graphs,
        functional: BTreeMap::new(),
        definitions: definable::definitions(k)?,
    };
    code.validate()?;
    Ok(code)
}

/// `μ_Γ(b₁ᵐ) = m`.
pub fn mu_gamma(g: &BsGroup, power: &BsElement, b1: &BsElement) -> Result<i64> {
    if b1.m != 1 {
        return Err(Error::Precondition(format!("b1 = {b1} is not in Ab")));
    }
    if g.pow(b1, power.m) != *power {
        return Err(Error::NotInCyclic(format!("{power} is not in ⟨{b1}⟩")));
    }
    Ok(power.m)
}

/// `a₁^{z·kⁱ}·b₁ᵐ`, the image of `(b₁^z, b₁ⁱ, b₁ᵐ)` under `μ_Δ1∘μ_Γ1`.
pub fn theta_bs_image(g: &BsGroup, a1: &BsElement, b1: &BsElement, z: i64, i: i64, m: i64) -> BsElement {
    let y = g.context().k_pow(i).mul_int(&z.into());
    g.mul(&g.a_power(a1, &y), &g.pow(b1, m))
}

/// Evaluates `θ_BS(zt, it, mt, x, a₁, b₁)` with `τ` decided by its witness checker.
pub fn theta_bs_check(
    g: &BsGroup,
    args: [&BsElement; 4],
    a1: &BsElement,
    b1: &BsElement,
    cfg: &WitnessConfig,
) -> Result<Verdict<BsElement>> {
    if !in_a1(a1) || b1.m != 1 {
        return Err(Error::Precondition(format!("({a1}, {b1}) is not in A₁ × Ab")));
    }
    let [zt, it, mt, x] = args;
    for u in [it, mt] {
        if !g.is_identity(&g.comm(u, b1)) {
            return Ok(Verdict::ConclusiveFalse(vec![]));
        }
    }
    let inner = g.product([it, x, &g.inv(mt), &g.inv(it)]);
    let report = witness_check(g, Name::Tau, &[a1.clone(), inner, zt.clone(), b1.clone()], cfg)?;
    Ok(report.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_gamma_examples() {
        let g = BsGroup::new(2).unwrap();
        let b = g.b();
        assert_eq!(mu_gamma(&g, &g.pow(&b, 3), &b).unwrap(), 3);
        let b1 = g.elem(1, 0, 1);
        let sq = g.pow(&b1, 2);
        assert_eq!(sq, g.elem(3, 1, 2));
        assert_eq!(mu_gamma(&g, &sq, &b1).unwrap(), 2);
        assert!(matches!(mu_gamma(&g, &g.a(), &b), Err(Error::NotInCyclic(_))));
    }

    #[test]
    fn theta_bs_examples() {
        let g = BsGroup::new(2).unwrap();
        let cfg = WitnessConfig::new(&g);
        let (a, b) = (g.a(), g.b());
        let e = g.identity();
        let v = theta_bs_check(&g, [&b, &e, &e, &a], &a, &b, &cfg).unwrap();
        assert!(v.is_true());
        let x = g.elem(2, 0, 1);
        assert_eq!(theta_bs_image(&g, &a, &b, 1, 1, 1), x);
        assert!(theta_bs_check(&g, [&b, &b, &b, &x], &a, &b, &cfg).unwrap().is_true());
        let x = g.elem(3, 0, 1);
        assert!(theta_bs_check(&g, [&b, &b, &b, &x], &a, &b, &cfg).unwrap().is_false());
    }
}
