use std::collections::{BTreeMap, BTreeSet};

use super::{merge_language, Definitions, Formula, Term};
use crate::error::{Error, Result};

/// `base` with a numeric suffix (`y` → `y1`, `y1` → `y2`, …) avoiding `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| cand != base && !taken.contains(cand))
        .expect("unbounded suffixes")
}

fn subst_term(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Identity | Term::Zero | Term::One => t.clone(),
        Term::Inv(a) => Term::inv(subst_term(a, map)),
        Term::Mul(a, b) => Term::mul(subst_term(a, map), subst_term(b, map)),
        Term::Add(a, b) => Term::add(subst_term(a, map), subst_term(b, map)),
        Term::Times(a, b) => Term::times(subst_term(a, map), subst_term(b, map)),
    }
}

fn subst_binder(
    var: &str,
    body: &Formula,
    map: &BTreeMap<String, Term>,
) -> (String, Formula) {
    let mut inner = map.clone();
    inner.remove(var);
    let body_free = body.free_vars();
    inner.retain(|k, _| body_free.contains(k));
    if inner.is_empty() {
        return (var.to_string(), body.clone());
    }
    let captures = inner.values().any(|t| t.occurrences(var) > 0);
    if !captures {
        return (var.to_string(), subst_inner(body, &inner));
    }
    let mut taken = body.all_vars();
    for (k, t) in &inner {
        taken.insert(k.clone());
        t.vars(&mut taken);
    }
    let renamed = fresh_name(var, &taken);
    let body = subst_inner(body, &BTreeMap::from([(var.to_string(), Term::var(&renamed))]));
    (renamed, subst_inner(&body, &inner))
}

fn subst_inner(f: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::Eq(a, b) => Formula::eq(subst_term(a, map), subst_term(b, map)),
        Formula::Exp(x, y, z) => {
            Formula::exp(subst_term(x, map), subst_term(y, map), subst_term(z, map))
        }
        Formula::Pred(name, args) => Formula::Pred(
            name.clone(),
            args.iter().map(|t| subst_term(t, map)).collect(),
        ),
        Formula::Not(a) => Formula::not(subst_inner(a, map)),
        Formula::And(a, b) => Formula::and(subst_inner(a, map), subst_inner(b, map)),
        Formula::Or(a, b) => Formula::or(subst_inner(a, map), subst_inner(b, map)),
        Formula::Implies(a, b) => Formula::implies(subst_inner(a, map), subst_inner(b, map)),
        Formula::Exists(v, body) => {
            let (v, body) = subst_binder(v, body, map);
            Formula::exists(v, body)
        }
        Formula::Forall(v, body) => {
            let (v, body) = subst_binder(v, body, map);
            Formula::forall(v, body)
        }
    }
}

/// Capture-avoiding simultaneous substitution of free variables.
pub fn substitute(f: &Formula, binding: &BTreeMap<String, Term>) -> Result<Formula> {
    let mut lang = f.language()?;
    for t in binding.values() {
        lang = merge_language(lang, t.language()?)?;
    }
    Ok(subst_inner(f, binding))
}

pub(crate) fn rename_free(f: &Formula, from: &str, to: &str) -> Formula {
    subst_inner(f, &BTreeMap::from([(from.to_string(), Term::var(to))]))
}

/// Negation normal form: `->` eliminated and `~` applied to atoms only.
pub fn nnf(f: &Formula) -> Formula {
    match f {
        Formula::Not(inner) => negate(inner),
        Formula::And(a, b) => Formula::and(nnf(a), nnf(b)),
        Formula::Or(a, b) => Formula::or(nnf(a), nnf(b)),
        Formula::Implies(a, b) => Formula::or(negate(a), nnf(b)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), nnf(body)),
        Formula::Forall(v, body) => Formula::forall(v.clone(), nnf(body)),
        atom => atom.clone(),
    }
}

fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Not(inner) => nnf(inner),
        Formula::And(a, b) => Formula::or(negate(a), negate(b)),
        Formula::Or(a, b) => Formula::and(negate(a), negate(b)),
        Formula::Implies(a, b) => Formula::and(nnf(a), negate(b)),
        Formula::Exists(v, body) => Formula::forall(v.clone(), negate(body)),
        Formula::Forall(v, body) => Formula::exists(v.clone(), negate(body)),
        atom => Formula::not(atom.clone()),
    }
}

/// Inlines every predicate atom by its definition, recursively.
pub fn expand(f: &Formula, defs: &Definitions) -> Result<Formula> {
    Ok(match f {
        Formula::Pred(name, args) => {
            let def = defs
                .get(name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            expand(&def.instantiate(name, args)?, defs)?
        }
        Formula::Not(a) => Formula::not(expand(a, defs)?),
        Formula::And(a, b) => Formula::and(expand(a, defs)?, expand(b, defs)?),
        Formula::Or(a, b) => Formula::or(expand(a, defs)?, expand(b, defs)?),
        Formula::Implies(a, b) => Formula::implies(expand(a, defs)?, expand(b, defs)?),
        Formula::Exists(v, body) => Formula::exists(v.clone(), expand(body, defs)?),
        Formula::Forall(v, body) => Formula::forall(v.clone(), expand(body, defs)?),
        atom => atom.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{parse_formula, Definition, Language};

    fn g(src: &str) -> Formula {
        parse_formula(src, Language::Group).unwrap()
    }

    fn bind(v: &str, t: Term) -> BTreeMap<String, Term> {
        BTreeMap::from([(v.to_string(), t)])
    }

    #[test]
    fn substitution_examples() {
        let f = substitute(&g("x = x"), &bind("x", Term::Identity)).unwrap();
        assert_eq!(f.to_string(), "e = e");
        let f = substitute(&g("E y . (x = y)"), &bind("x", Term::var("y"))).unwrap();
        assert_eq!(f.to_string(), "E y1 . y = y1");
    }

    #[test]
    fn alpha_at_inverse_keeps_only_a_free() {
        let alpha = g("A y . ([inv(y)*x*y, x] = e)");
        let f = substitute(&alpha, &bind("x", Term::inv(Term::var("a")))).unwrap();
        assert_eq!(f.free_vars(), BTreeSet::from(["a".to_string()]));
        assert_eq!(f, g("A y . ([inv(y)*inv(a)*y, inv(a)] = e)"));
    }

    #[test]
    fn bound_occurrences_are_untouched() {
        let f = g("E x . x = y & x = e");
        let s = substitute(&f, &bind("x", Term::var("z"))).unwrap();
        assert_eq!(s, g("E x . x = y & x = e"));
        let f = g("(E x . x = y) & x = e");
        let s = substitute(&f, &bind("x", Term::var("z"))).unwrap();
        assert_eq!(s, g("(E x . x = y) & z = e"));
    }

    #[test]
    fn nested_capture_picks_unused_suffix() {
        let f = g("E y . E y1 . x = y * y1");
        let s = substitute(&f, &bind("x", Term::var("y"))).unwrap();
        assert_eq!(s.to_string(), "E y2 . E y1 . y = (y2 * y1)");
    }

    #[test]
    fn language_mismatch_is_rejected() {
        let err = substitute(&g("x = e"), &bind("x", Term::One));
        assert!(matches!(err, Err(Error::LanguageMismatch(_))));
    }

    #[test]
    fn nnf_pushes_negations() {
        let f = g("~(A x . (x = y -> ~y = e))");
        assert_eq!(nnf(&f), g("E x . (x = y & y = e)"));
    }

    #[test]
    fn expansion_inlines_definitions() {
        let defs = Definitions::from([(
            "commutes".to_string(),
            Definition::new(["x", "y"], g("x * y = y * x")),
        )]);
        let f = g("E y . commutes(y, x)");
        assert_eq!(expand(&f, &defs).unwrap(), g("E y . y * x = x * y"));
        let bad = g("other(x)");
        assert_eq!(expand(&bad, &defs), Err(Error::UnknownSymbol("other".into())));
    }
}
