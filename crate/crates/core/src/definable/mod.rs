//! The defining formulas for `A`, `Ab`, divisibility and multiplication on
//! `⟨b₁⟩`, the graph `τ`, `A₁` and the bi-interpretation formulas `θ`.
//!
//! Every formula comes in three forms: its AST (parsed from source text that
//! refers to earlier formulas by name), a semantic predicate giving the
//! algebraic truth value, and a witness checker replaying the constructive
//! content of the corresponding proof.

mod oracle;
mod sweep;
mod witness;

use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};
use crate::fol::{self, Definition, Definitions, Formula, Language};
use crate::group::{BsElement, BsGroup};
use crate::rings::int_divides;

pub use oracle::{SemanticOracle, WitnessOracle};
pub use sweep::{a1_samples, ab_samples, agreement_sweep, standard_tuples, Disagreement, SweepReport};
pub use witness::{witness_check, WitnessConfig, WitnessReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Name {
    Alpha,
    Beta,
    Delta,
    /// `w = t^{n(n+1)}` for `x = tⁿ`; the helper behind `γ`.
    Pronic,
    Gamma,
    Tau,
    Pi,
    ThetaBs,
    ThetaZ,
}

impl Name {
    pub const ALL: [Name; 9] = [
        Name::Alpha,
        Name::Beta,
        Name::Delta,
        Name::Pronic,
        Name::Gamma,
        Name::Tau,
        Name::Pi,
        Name::ThetaBs,
        Name::ThetaZ,
    ];

    /// The formulas of the group language, in dependency order.
    pub const GROUP: [Name; 8] = [
        Name::Alpha,
        Name::Beta,
        Name::Delta,
        Name::Pronic,
        Name::Gamma,
        Name::Tau,
        Name::Pi,
        Name::ThetaBs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Name::Alpha => "alpha",
            Name::Beta => "beta",
            Name::Delta => "delta",
            Name::Pronic => "pronic",
            Name::Gamma => "gamma",
            Name::Tau => "tau",
            Name::Pi => "pi",
            Name::ThetaBs => "theta_bs",
            Name::ThetaZ => "theta_z",
        }
    }

    pub fn params(self) -> &'static [&'static str] {
        match self {
            Name::Alpha | Name::Pi => &["x"],
            Name::Beta => &["y"],
            Name::Delta => &["x", "y"],
            Name::Pronic => &["x", "w", "t"],
            Name::Gamma => &["x", "y", "z", "t"],
            Name::Tau => &["x", "y", "h", "b1"],
            Name::ThetaBs => &["zt", "it", "mt", "x", "at", "bt"],
            Name::ThetaZ => &["zt", "it", "mt", "x", "za", "ia", "ma", "zb", "ib", "mb"],
        }
    }

    pub fn language(self) -> Language {
        match self {
            Name::ThetaZ => Language::Ring,
            _ => Language::Group,
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Name::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

/// Source text of a group-language formula; `beta` mentions `k`.
pub fn source(name: Name, k: u64) -> Result<String> {
    Ok(match name {
        Name::Alpha => "A y . [inv(y)*x*y, x] = e".to_string(),
        Name::Beta => format!("A x . (alpha(x) -> inv(y)*x*y = x^{k})"),
        Name::Delta => "A c . (alpha(c) -> E u . (alpha(u) & [x, c] = [y, u]))".to_string(),
        Name::Pronic => "[x, t] = e & [w, t] = e & (((x = e | x = inv(t)) & w = e) \
             | (~x = e & ~x = inv(t) & delta(w*w*inv(x), x*x*t) \
             & A v . ([v, t] = e -> ((delta(v, w) -> delta(v, x) & delta(v, x*t)) \
             & (delta(v, x) & delta(v, x*t) -> delta(v, w))))))"
            .to_string(),
        Name::Gamma => "beta(t) & [x, t] = e & [y, t] = e & [z, t] = e \
             & ((x = e & z = e) | (y = e & z = e) | (x = inv(t) & z = inv(y)) \
             | (y = inv(t) & z = inv(x)) \
             | E p . E q . E r . (pronic(x*y, p, t) & pronic(x, q, t) & pronic(y, r, t) \
             & p = q*r*z*z))"
            .to_string(),
        Name::Tau => "alpha(x) & alpha(y) & [h, b1] = e & beta(b1) \
             & A v . A w . ([v, b1] = e & [w, b1] = e & gamma(h, v, w, b1) \
             -> E u . (alpha(u) & [v, y] = [w, x] * [v, [u, v]]))"
            .to_string(),
        Name::Pi => "A c . A v . (alpha(c) & beta(v) \
             -> E w . E h . ([w, v] = e & tau(x, inv(w)*c*w, h, v)))"
            .to_string(),
        Name::ThetaBs => "[it, bt] = e & [mt, bt] = e & tau(at, it*x*inv(mt)*inv(it), zt, bt)"
            .to_string(),
        Name::ThetaZ => crate::interp::theta_z(k)?.to_string(),
    })
}

/// A named formula with its parameter signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFormula {
    pub name: Name,
    pub params: Vec<String>,
    pub ast: Formula,
}

impl NamedFormula {
    pub fn new(name: Name, k: u64) -> Result<Self> {
        let ast = fol::parse_formula(&source(name, k)?, name.language())?;
        let params: Vec<String> = name.params().iter().map(|p| p.to_string()).collect();
        let free = ast.free_vars();
        if free.iter().any(|v| !params.contains(v)) {
            return Err(Error::Precondition(format!(
                "{name} has free variables {free:?} outside {params:?}"
            )));
        }
        Ok(NamedFormula { name, params, ast })
    }

    /// The AST with every reference to another named formula inlined.
    pub fn expanded(&self, k: u64) -> Result<Formula> {
        fol::expand(&self.ast, &definitions(k)?)
    }
}

/// The group-language formulas as definitions for predicate atoms.
pub fn definitions(k: u64) -> Result<Definitions> {
    let mut defs = Definitions::new();
    for name in Name::GROUP {
        let f = NamedFormula::new(name, k)?;
        defs.insert(name.as_str().to_string(), Definition::new(f.params, f.ast));
    }
    Ok(defs)
}

fn check_arity(name: Name, args: &[BsElement]) -> Result<()> {
    let expected = name.params().len();
    if args.len() != expected {
        return Err(Error::Arity {
            name: name.to_string(),
            expected,
            got: args.len(),
        });
    }
    Ok(())
}

fn commute(g: &BsGroup, x: &BsElement, y: &BsElement) -> bool {
    g.is_identity(&g.comm(x, y))
}

/// The algebraic truth value stated by the corresponding lemma.
///
/// `pronic` is characterized only for `t ∈ Ab` and `theta_z` lives in the
/// ring language; both are rejected here.
pub fn semantic(g: &BsGroup, name: Name, args: &[BsElement]) -> Result<bool> {
    check_arity(name, args)?;
    Ok(match name {
        Name::Alpha => args[0].m == 0,
        Name::Beta => args[0].m == 1,
        Name::Delta => int_divides(args[1].m, args[0].m),
        Name::Pronic => {
            let (x, w, t) = (&args[0], &args[1], &args[2]);
            if t.m != 1 {
                return Err(Error::Precondition("pronic is characterized for t ∈ Ab only".into()));
            }
            let n = i128::from(x.m);
            commute(g, x, t) && commute(g, w, t) && i128::from(w.m) == n * (n + 1)
        }
        Name::Gamma => {
            let (x, y, z, t) = (&args[0], &args[1], &args[2], &args[3]);
            t.m == 1
                && [x, y, z].iter().all(|u| commute(g, u, t))
                && i128::from(x.m) * i128::from(y.m) == i128::from(z.m)
        }
        Name::Tau => {
            let (x, y, h, b1) = (&args[0], &args[1], &args[2], &args[3]);
            x.m == 0
                && y.m == 0
                && b1.m == 1
                && commute(g, h, b1)
                && x.y.mul_int(&h.m.into()) == y.y
        }
        Name::Pi => args[0].m == 0 && args[0].y.is_unit(),
        Name::ThetaBs => {
            let (zt, it, mt, x, at, bt) = (&args[0], &args[1], &args[2], &args[3], &args[4], &args[5]);
            let inner = g.product([it, x, &g.inv(mt), &g.inv(it)]);
            commute(g, it, bt)
                && commute(g, mt, bt)
                && semantic(g, Name::Tau, &[at.clone(), inner, zt.clone(), bt.clone()])?
        }
        Name::ThetaZ => {
            return Err(Error::LanguageMismatch("theta_z is a ring-language formula".into()))
        }
    })
}

/// `x ∈ A₁`: `x = a^y` with `y` a unit of ℤ[1/k].
pub fn in_a1(x: &BsElement) -> bool {
    x.m == 0 && !x.y.is_zero() && x.y.is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> BsGroup {
        BsGroup::new(2).unwrap()
    }

    #[test]
    fn every_source_parses_with_its_signature() {
        for k in [2, 3, 6] {
            for name in Name::ALL {
                let f = NamedFormula::new(name, k).unwrap();
                let printed = f.ast.to_string();
                assert_eq!(fol::parse_formula(&printed, name.language()).unwrap(), f.ast);
                let declared: std::collections::BTreeSet<String> =
                    f.params.iter().cloned().collect();
                assert!(f.ast.free_vars().is_subset(&declared), "{name}");
            }
        }
    }

    #[test]
    fn expansion_is_pure_group_language() {
        for name in Name::GROUP {
            let f = NamedFormula::new(name, 2).unwrap().expanded(2).unwrap();
            let mut has_pred = false;
            f.visit(&mut |g| has_pred |= matches!(g, Formula::Pred(..)));
            assert!(!has_pred, "{name}");
            assert_eq!(f.language().unwrap(), Some(Language::Group));
        }
    }

    #[test]
    fn semantic_examples() {
        let g = g2();
        assert!(semantic(&g, Name::Alpha, &[g.a()]).unwrap());
        assert!(!semantic(&g, Name::Alpha, &[g.b()]).unwrap());
        let b = g.b();
        let (b6, b5, b3) = (g.pow(&b, 6), g.pow(&b, 5), g.pow(&b, 3));
        assert!(semantic(&g, Name::Delta, &[b6, b3.clone()]).unwrap());
        assert!(!semantic(&g, Name::Delta, &[b5, b3.clone()]).unwrap());
        let tau = [g.pow(&g.a(), 2), g.pow(&g.a(), 6), b3.clone(), b.clone()];
        assert!(semantic(&g, Name::Tau, &tau).unwrap());
        let tau = [g.a(), g.pow(&g.a(), 6), b3, b];
        assert!(!semantic(&g, Name::Tau, &tau).unwrap());
        assert!(matches!(
            semantic(&g, Name::Tau, &[g.a()]),
            Err(Error::Arity { expected: 4, got: 1, .. })
        ));
    }

    #[test]
    fn names_round_trip() {
        for name in Name::ALL {
            assert_eq!(name.as_str().parse::<Name>().unwrap(), name);
        }
        assert!("omega".parse::<Name>().is_err());
    }
}
