//! First-order formulas over the group language `{·, ⁻¹, e}` and the ring
//! language `{+, ·, 0, 1}` extended by the exponentiation atom `exp(x, y, z)`.
//!
//! Formulas may also contain predicate atoms `name(t₁, …)` that abbreviate a
//! registered [`Definition`]; [`expand`] inlines them.

mod eval;
mod parse;
mod print;
mod structures;
mod subst;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub use eval::{Evaluator, Op, PredicateOracle, Structure, Verdict};
pub use parse::{parse_formula, parse_term};
pub use structures::{exp_holds, order_small_first, GroupBox, GroupStructure, IntegerStructure};
pub use subst::{expand, fresh_name, nnf, substitute};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Language {
    Group,
    Ring,
}

impl std::fmt::Display for Language {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Language::Group => "group",
            Language::Ring => "ring",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// The group identity `e`.
    Identity,
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
    Zero,
    One,
    Add(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    /// Left-associated product; the empty product is `e`.
    pub fn product(factors: impl IntoIterator<Item = Term>) -> Term {
        factors
            .into_iter()
            .reduce(Term::mul)
            .unwrap_or(Term::Identity)
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    /// `[s, t] = s⁻¹t⁻¹st`.
    pub fn comm(s: Term, t: Term) -> Term {
        Term::product([Term::inv(s.clone()), Term::inv(t.clone()), s, t])
    }

    /// `t⁻¹st`.
    pub fn conj(s: Term, t: Term) -> Term {
        Term::product([Term::inv(t.clone()), s, t])
    }

    /// `tⁿ` as a product of `|n|` copies of `t` or `t⁻¹`.
    pub fn power(t: Term, n: i64) -> Term {
        let factor = if n < 0 { Term::inv(t) } else { t };
        Term::product(std::iter::repeat_n(factor, n.unsigned_abs() as usize))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    /// Left-associated sum; the empty sum is `0`.
    pub fn sum(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().reduce(Term::add).unwrap_or(Term::Zero)
    }

    /// The numeral `n ≥ 0` as `((1 + 1) + …)`.
    pub fn numeral(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            _ => Term::sum(std::iter::repeat_n(Term::One, n as usize)),
        }
    }

    /// The language forced by this term's symbols, if any.
    pub fn language(&self) -> Result<Option<Language>> {
        let own = match self {
            Term::Var(_) => None,
            Term::Identity | Term::Mul(..) | Term::Inv(_) => Some(Language::Group),
            Term::Zero | Term::One | Term::Add(..) | Term::Times(..) => Some(Language::Ring),
        };
        let mut lang = own;
        for child in self.children() {
            lang = merge_language(lang, child.language()?)?;
        }
        Ok(lang)
    }

    fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Identity | Term::Zero | Term::One => vec![],
            Term::Inv(a) => vec![a],
            Term::Mul(a, b) | Term::Add(a, b) | Term::Times(a, b) => vec![a, b],
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.vars(out);
        }
    }

    pub fn var_set(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars(&mut out);
        out
    }

    pub fn occurrences(&self, var: &str) -> usize {
        match self {
            Term::Var(v) => usize::from(v == var),
            _ => self.children().iter().map(|c| c.occurrences(var)).sum(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

pub(crate) fn merge_language(a: Option<Language>, b: Option<Language>) -> Result<Option<Language>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::LanguageMismatch(format!(
            "{x} and {y} symbols in one expression"
        ))),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    Eq(Term, Term),
    /// `x = y^z` with `z ≥ 0`; ring language only.
    Exp(Term, Term, Term),
    /// An abbreviation `name(t₁, …)` for a registered definition.
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn exp(x: Term, y: Term, z: Term) -> Formula {
        Formula::Exp(x, y, z)
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// Left-associated conjunction; the empty conjunction is `true`.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .filter(|f| *f != Formula::True)
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-associated disjunction of a nonempty list.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .expect("empty disjunction")
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists_all<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v, acc))
    }

    pub fn forall_all<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, out: &mut BTreeSet<String>| {
            for v in t.var_set() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::True => {}
            Formula::Eq(a, b) => {
                add_term(a, out);
                add_term(b, out);
            }
            Formula::Exp(a, b, c) => {
                for t in [a, b, c] {
                    add_term(t, out);
                }
            }
            Formula::Pred(_, args) => {
                for t in args {
                    add_term(t, out);
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) => {
                a.vars(&mut out);
                b.vars(&mut out);
            }
            Formula::Exp(a, b, c) => {
                for t in [a, b, c] {
                    t.vars(&mut out);
                }
            }
            Formula::Pred(_, args) => args.iter().for_each(|t| t.vars(&mut out)),
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// The language forced by the symbols used, if any. Predicate atoms are neutral.
    pub fn language(&self) -> Result<Option<Language>> {
        let mut lang = None;
        let mut err = None;
        self.visit(&mut |f| {
            let here = match f {
                Formula::Eq(a, b) => merge_language(a.language().ok().flatten(), b.language().ok().flatten()),
                Formula::Exp(..) => Ok(Some(Language::Ring)),
                Formula::Pred(_, args) => args.iter().try_fold(None, |acc, t| {
                    merge_language(acc, t.language()?)
                }),
                _ => Ok(None),
            };
            let checked = match f {
                Formula::Eq(a, b) => a.language().and(b.language()).and(here),
                _ => here,
            };
            match checked.and_then(|l| merge_language(lang, l)) {
                Ok(l) => lang = l,
                Err(e) => err = err.clone().or(Some(e)),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(lang),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            n += match f {
                Formula::Eq(a, b) => a.size() + b.size(),
                Formula::Exp(a, b, c) => a.size() + b.size() + c.size(),
                Formula::Pred(_, args) => args.iter().map(Term::size).sum(),
                _ => 1,
            }
        });
        n
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut qf = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Exists(..) | Formula::Forall(..)) {
                qf = false;
            }
        });
        qf
    }
}

/// A named formula with an ordered parameter list; predicate atoms refer to these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub params: Vec<String>,
    pub body: Formula,
}

impl Definition {
    pub fn new<S: Into<String>>(params: impl IntoIterator<Item = S>, body: Formula) -> Self {
        Definition {
            params: params.into_iter().map(Into::into).collect(),
            body,
        }
    }

    /// The body with parameters replaced by `args`.
    pub fn instantiate(&self, name: &str, args: &[Term]) -> Result<Formula> {
        if args.len() != self.params.len() {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: self.params.len(),
                got: args.len(),
            });
        }
        let binding: BTreeMap<String, Term> = self
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        substitute(&self.body, &binding)
    }
}

/// Registered definitions by name.
pub type Definitions = BTreeMap<String, Definition>;
