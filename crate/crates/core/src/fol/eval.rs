use std::cell::Cell;
use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use super::{nnf, Definitions, Formula, Language, Term};
use crate::error::{Error, Result};

/// Three-valued outcome of bounded evaluation.
///
/// `ConclusiveTrue` carries the values chosen for the outermost existential
/// block, `ConclusiveFalse` those of a refuting instance of the outermost
/// universal block; either list is empty when there is no such block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<E> {
    ConclusiveTrue(Vec<(String, E)>),
    ConclusiveFalse(Vec<(String, E)>),
    Inconclusive,
}

impl<E> Verdict<E> {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::ConclusiveTrue(Vec::new())
        } else {
            Verdict::ConclusiveFalse(Vec::new())
        }
    }

    pub fn truth(&self) -> Option<bool> {
        match self {
            Verdict::ConclusiveTrue(_) => Some(true),
            Verdict::ConclusiveFalse(_) => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    pub fn is_true(&self) -> bool {
        self.truth() == Some(true)
    }

    pub fn is_false(&self) -> bool {
        self.truth() == Some(false)
    }

    pub fn is_conclusive(&self) -> bool {
        self.truth().is_some()
    }

    /// The recorded witness or counterexample.
    pub fn assignment(&self) -> &[(String, E)] {
        match self {
            Verdict::ConclusiveTrue(w) | Verdict::ConclusiveFalse(w) => w,
            Verdict::Inconclusive => &[],
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Verdict::ConclusiveTrue(w) => Verdict::ConclusiveFalse(w),
            Verdict::ConclusiveFalse(w) => Verdict::ConclusiveTrue(w),
            Verdict::Inconclusive => Verdict::Inconclusive,
        }
    }

    fn without_assignment(self) -> Self {
        match self.truth() {
            Some(b) => Verdict::from_bool(b),
            None => Verdict::Inconclusive,
        }
    }
}

impl<E: fmt::Display> fmt::Display for Verdict<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, w) = match self {
            Verdict::ConclusiveTrue(w) => ("ConclusiveTrue", w),
            Verdict::ConclusiveFalse(w) => ("ConclusiveFalse", w),
            Verdict::Inconclusive => return f.write_str("Inconclusive"),
        };
        f.write_str(label)?;
        if !w.is_empty() {
            let parts: Vec<String> = w.iter().map(|(v, e)| format!("{v} = {e}")).collect();
            write!(f, " [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Function symbols of both languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Identity,
    Mul,
    Inv,
    Zero,
    One,
    Add,
    Times,
}

/// Semantic decision procedure for named predicates, consulted before any
/// registered definition is expanded.
pub trait PredicateOracle<E>: Send + Sync {
    /// `None` when the oracle does not know `name`.
    fn eval(&self, name: &str, args: &[E]) -> Option<Result<Verdict<E>>>;

    /// The complete set of values for the single `None` argument making the
    /// predicate true, when that set is finite and computable.
    fn solve(&self, _name: &str, _args: &[Option<E>]) -> Option<Vec<E>> {
        None
    }
}

/// A structure in which formulas are evaluated, together with the finite box
/// that bounded quantifiers enumerate.
pub trait Structure {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn language(&self) -> Language;

    /// The enumeration box, in the fixed witness order.
    fn domain(&self) -> &[Self::Elem];

    /// Whether the box is the whole structure, which makes failed searches conclusive.
    fn domain_is_complete(&self) -> bool {
        false
    }

    fn apply(&self, op: Op, args: &[Self::Elem]) -> Result<Self::Elem>;

    fn exp_atom(&self, _x: &Self::Elem, _y: &Self::Elem, _z: &Self::Elem) -> Result<bool> {
        Err(Error::LanguageMismatch("exp atom outside the ring language".into()))
    }

    /// `target - b`, for solving `x + b = target`.
    fn solve_add(&self, _target: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// All `x` with `x·b = target`, when finitely many.
    fn solve_times(&self, _target: &Self::Elem, _b: &Self::Elem) -> Option<Vec<Self::Elem>> {
        None
    }

    /// All values of the single unknown `None` argument of `exp`, when finitely many.
    fn solve_exp(&self, _args: [Option<&Self::Elem>; 3]) -> Option<Vec<Self::Elem>> {
        None
    }

    fn predicate(&self, _name: &str, _args: &[Self::Elem]) -> Option<Result<Verdict<Self::Elem>>> {
        None
    }

    fn solve_predicate(
        &self,
        _name: &str,
        _args: &[Option<Self::Elem>],
    ) -> Option<Vec<Self::Elem>> {
        None
    }
}

type Env<E> = Vec<(String, E)>;

/// Sound bounded evaluation.
///
/// An existential block is decided by search. Variables pinned down by an
/// equation, `exp` atom or solvable predicate are computed rather than
/// enumerated, and disjunctions are split; both keep the search exhaustive.
/// Only when a variable has to be drawn from the box does a failed search
/// become `Inconclusive`. Universal blocks are evaluated as `¬∃¬`.
pub struct Evaluator<'a, S: Structure> {
    structure: &'a S,
    defs: Option<&'a Definitions>,
    max_steps: u64,
    steps: Cell<u64>,
}

impl<'a, S: Structure> Evaluator<'a, S> {
    pub fn new(structure: &'a S) -> Self {
        Evaluator {
            structure,
            defs: None,
            max_steps: u64::MAX,
            steps: Cell::new(0),
        }
    }

    /// Definitions used for predicate atoms the structure does not decide itself.
    pub fn with_definitions(mut self, defs: &'a Definitions) -> Self {
        self.defs = Some(defs);
        self
    }

    /// Caps the number of box elements tried; an exhausted budget yields `Inconclusive`.
    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    pub fn evaluate(&self, f: &Formula, assignment: &[(String, S::Elem)]) -> Result<Verdict<S::Elem>> {
        if let Some(unbound) = f
            .free_vars()
            .into_iter()
            .find(|v| !assignment.iter().any(|(n, _)| n == v))
        {
            return Err(Error::Unbound(unbound));
        }
        let mut env = assignment.to_vec();
        self.eval(f, &mut env)
    }

    pub fn eval_term(&self, t: &Term, env: &[(String, S::Elem)]) -> Result<S::Elem> {
        let s = self.structure;
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, e)| e.clone())
                .ok_or_else(|| Error::Unbound(v.clone())),
            Term::Identity => s.apply(Op::Identity, &[]),
            Term::Zero => s.apply(Op::Zero, &[]),
            Term::One => s.apply(Op::One, &[]),
            Term::Inv(a) => s.apply(Op::Inv, &[self.eval_term(a, env)?]),
            Term::Mul(a, b) => s.apply(Op::Mul, &[self.eval_term(a, env)?, self.eval_term(b, env)?]),
            Term::Add(a, b) => s.apply(Op::Add, &[self.eval_term(a, env)?, self.eval_term(b, env)?]),
            Term::Times(a, b) => {
                s.apply(Op::Times, &[self.eval_term(a, env)?, self.eval_term(b, env)?])
            }
        }
    }

    fn eval(&self, f: &Formula, env: &mut Env<S::Elem>) -> Result<Verdict<S::Elem>> {
        match f {
            Formula::True => Ok(Verdict::from_bool(true)),
            Formula::Eq(a, b) => Ok(Verdict::from_bool(
                self.eval_term(a, env)? == self.eval_term(b, env)?,
            )),
            Formula::Exp(x, y, z) => {
                let (x, y, z) = (self.eval_term(x, env)?, self.eval_term(y, env)?, self.eval_term(z, env)?);
                Ok(Verdict::from_bool(self.structure.exp_atom(&x, &y, &z)?))
            }
            Formula::Pred(name, args) => {
                let vals = args
                    .iter()
                    .map(|t| self.eval_term(t, env))
                    .collect::<Result<Vec<_>>>()?;
                self.eval_pred(name, &vals)
            }
            Formula::Not(a) => Ok(self.eval(a, env)?.negate()),
            Formula::And(a, b) => {
                let va = self.eval(a, env)?;
                if va.is_false() {
                    return Ok(va);
                }
                let vb = self.eval(b, env)?;
                Ok(match (va, vb) {
                    (_, vb @ Verdict::ConclusiveFalse(_)) => vb,
                    (Verdict::ConclusiveTrue(mut wa), Verdict::ConclusiveTrue(wb)) => {
                        wa.extend(wb);
                        Verdict::ConclusiveTrue(wa)
                    }
                    _ => Verdict::Inconclusive,
                })
            }
            Formula::Or(a, b) => self.eval_or(self.eval(a, env)?, b, env),
            Formula::Implies(a, b) => {
                let na = self.eval(a, env)?.negate();
                self.eval_or(na, b, env)
            }
            Formula::Exists(..) => {
                let (vars, body) = block(f, true);
                self.exists(&vars, body, env)
            }
            Formula::Forall(..) => {
                let (vars, body) = block(f, false);
                Ok(self.exists(&vars, &Formula::not(body.clone()), env)?.negate())
            }
        }
    }

    fn eval_or(
        &self,
        va: Verdict<S::Elem>,
        b: &Formula,
        env: &mut Env<S::Elem>,
    ) -> Result<Verdict<S::Elem>> {
        if va.is_true() {
            return Ok(va);
        }
        let vb = self.eval(b, env)?;
        Ok(match (va, vb) {
            (_, vb @ Verdict::ConclusiveTrue(_)) => vb,
            (Verdict::ConclusiveFalse(mut wa), Verdict::ConclusiveFalse(wb)) => {
                wa.extend(wb);
                Verdict::ConclusiveFalse(wa)
            }
            _ => Verdict::Inconclusive,
        })
    }

    fn eval_pred(&self, name: &str, vals: &[S::Elem]) -> Result<Verdict<S::Elem>> {
        if let Some(v) = self.structure.predicate(name, vals) {
            return Ok(v?.without_assignment());
        }
        let def = self
            .defs
            .and_then(|d| d.get(name))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        if def.params.len() != vals.len() {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: def.params.len(),
                got: vals.len(),
            });
        }
        let mut env: Env<S::Elem> = def.params.iter().cloned().zip(vals.iter().cloned()).collect();
        Ok(self.eval(&def.body, &mut env)?.without_assignment())
    }

    /// Decides `∃ vars . body`, recording the block's witness.
    fn exists(&self, vars: &[String], body: &Formula, env: &mut Env<S::Elem>) -> Result<Verdict<S::Elem>> {
        let mut search = Search {
            pending: vars.to_vec(),
            conjuncts: vec![Conj::new(nnf(body))],
        };
        let mut assigned = Vec::new();
        let v = self.search(&mut search, env, &mut assigned)?;
        Ok(match v {
            Verdict::ConclusiveTrue(w) => Verdict::ConclusiveTrue(
                w.into_iter().filter(|(n, _)| vars.contains(n)).collect(),
            ),
            other => other,
        })
    }

    fn search(
        &self,
        state: &mut Search,
        env: &mut Env<S::Elem>,
        assigned: &mut Env<S::Elem>,
    ) -> Result<Verdict<S::Elem>> {
        state.normalize(env);
        let pending: BTreeSet<String> = state.pending.iter().cloned().collect();

        let mut open = Vec::new();
        let mut ground_unknown = false;
        for c in std::mem::take(&mut state.conjuncts) {
            if c.free.is_disjoint(&pending) {
                match self.eval(&c.f, env)?.truth() {
                    Some(false) => return Ok(Verdict::from_bool(false)),
                    Some(true) => {}
                    None => ground_unknown = true,
                }
            } else {
                open.push(c);
            }
        }
        let weaken = |v: Verdict<S::Elem>| match v {
            Verdict::ConclusiveTrue(_) if ground_unknown => Verdict::Inconclusive,
            other => other,
        };
        if open.is_empty() {
            return Ok(weaken(Verdict::ConclusiveTrue(assigned.clone())));
        }

        if let Some((var, candidates)) = self.find_solvable(&state.pending, &open, env)? {
            let rest: Vec<String> = state.pending.iter().filter(|v| **v != var).cloned().collect();
            let mut all_false = true;
            for cand in candidates {
                let mut sub = Search {
                    pending: rest.clone(),
                    conjuncts: open.clone(),
                };
                let v = self.with_binding(&var, cand, env, assigned, |me, env, assigned| {
                    me.search(&mut sub, env, assigned)
                })?;
                match v {
                    Verdict::ConclusiveTrue(_) => return Ok(weaken(v)),
                    Verdict::ConclusiveFalse(_) => {}
                    Verdict::Inconclusive => all_false = false,
                }
            }
            return Ok(weaken(if all_false {
                Verdict::from_bool(false)
            } else {
                Verdict::Inconclusive
            }));
        }

        // the disjunction closest to ground is split first
        let split = open
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(*c.f, Formula::Or(..)))
            .min_by_key(|(_, c)| c.free.intersection(&pending).count())
            .map(|(pos, _)| pos);
        if let Some(pos) = split {
            let c = open.remove(pos);
            let Formula::Or(left, right) = &*c.f else {
                unreachable!()
            };
            let mut all_false = true;
            for branch in [left, right] {
                let mut conjuncts = open.clone();
                conjuncts.push(Conj::new((**branch).clone()));
                let mut sub = Search {
                    pending: state.pending.clone(),
                    conjuncts,
                };
                match self.search(&mut sub, env, assigned)? {
                    v @ Verdict::ConclusiveTrue(_) => return Ok(weaken(v)),
                    Verdict::ConclusiveFalse(_) => {}
                    Verdict::Inconclusive => all_false = false,
                }
            }
            return Ok(weaken(if all_false {
                Verdict::from_bool(false)
            } else {
                Verdict::Inconclusive
            }));
        }

        let var = state.pending[0].clone();
        let rest: Vec<String> = state.pending[1..].to_vec();
        let mut all_false = self.structure.domain_is_complete();
        for elem in self.structure.domain() {
            if self.steps.get() >= self.max_steps {
                all_false = false;
                break;
            }
            self.steps.set(self.steps.get() + 1);
            let mut sub = Search {
                pending: rest.clone(),
                conjuncts: open.clone(),
            };
            let v = self.with_binding(&var, elem.clone(), env, assigned, |me, env, assigned| {
                me.search(&mut sub, env, assigned)
            })?;
            match v {
                Verdict::ConclusiveTrue(_) => return Ok(weaken(v)),
                Verdict::ConclusiveFalse(_) => {}
                Verdict::Inconclusive => all_false = false,
            }
        }
        Ok(weaken(if all_false {
            Verdict::from_bool(false)
        } else {
            Verdict::Inconclusive
        }))
    }

    fn with_binding<T>(
        &self,
        var: &str,
        value: S::Elem,
        env: &mut Env<S::Elem>,
        assigned: &mut Env<S::Elem>,
        body: impl FnOnce(&Self, &mut Env<S::Elem>, &mut Env<S::Elem>) -> Result<T>,
    ) -> Result<T> {
        env.push((var.to_string(), value.clone()));
        assigned.push((var.to_string(), value));
        let out = body(self, env, assigned);
        env.pop();
        assigned.pop();
        out
    }

    /// A pending variable whose value set is fixed by one conjunct, with that set.
    fn find_solvable(
        &self,
        pending: &[String],
        open: &[Conj],
        env: &Env<S::Elem>,
    ) -> Result<Option<(String, Vec<S::Elem>)>> {
        let mut best: Option<(String, Vec<S::Elem>)> = None;
        for c in open {
            let mut unknown = pending.iter().filter(|v| c.free.contains(*v));
            let (Some(var), None) = (unknown.next(), unknown.next()) else { continue };
            if let Some(cands) = self.solve(&c.f, var, env)? {
                if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                    let done = cands.len() <= 1;
                    best = Some((var.clone(), cands));
                    if done {
                        break;
                    }
                }
            }
        }
        Ok(best)
    }

    fn solve(&self, c: &Formula, var: &str, env: &Env<S::Elem>) -> Result<Option<Vec<S::Elem>>> {
        let s = self.structure;
        let lone = |t: &Term| matches!(t, Term::Var(v) if v == var);
        match c {
            Formula::Eq(l, r) => {
                let (side, other) = match (l.occurrences(var), r.occurrences(var)) {
                    (1, 0) => (l, r),
                    (0, 1) => (r, l),
                    _ => return Ok(None),
                };
                let target = self.eval_term(other, env)?;
                self.isolate(side, var, target, env)
            }
            Formula::Exp(x, y, z) => {
                let args = [x, y, z];
                if args.iter().filter(|t| lone(t)).count() != 1
                    || args.iter().map(|t| t.occurrences(var)).sum::<usize>() != 1
                {
                    return Ok(None);
                }
                let vals = args
                    .iter()
                    .map(|t| if lone(t) { Ok(None) } else { self.eval_term(t, env).map(Some) })
                    .collect::<Result<Vec<_>>>()?;
                Ok(s.solve_exp([vals[0].as_ref(), vals[1].as_ref(), vals[2].as_ref()]))
            }
            Formula::Pred(name, args) => {
                if args.iter().filter(|t| lone(t)).count() != 1
                    || args.iter().map(|t| t.occurrences(var)).sum::<usize>() != 1
                {
                    return Ok(None);
                }
                let vals = args
                    .iter()
                    .map(|t| if lone(t) { Ok(None) } else { self.eval_term(t, env).map(Some) })
                    .collect::<Result<Vec<_>>>()?;
                Ok(s.solve_predicate(name, &vals))
            }
            _ => Ok(None),
        }
    }

    /// All values of `var` making `t` evaluate to `target`; `var` occurs once in `t`.
    fn isolate(
        &self,
        t: &Term,
        var: &str,
        target: S::Elem,
        env: &Env<S::Elem>,
    ) -> Result<Option<Vec<S::Elem>>> {
        let s = self.structure;
        match t {
            Term::Var(_) => Ok(Some(vec![target])),
            Term::Inv(a) => self.isolate(a, var, s.apply(Op::Inv, &[target])?, env),
            Term::Mul(a, b) => {
                if a.occurrences(var) > 0 {
                    let b_inv = s.apply(Op::Inv, &[self.eval_term(b, env)?])?;
                    self.isolate(a, var, s.apply(Op::Mul, &[target, b_inv])?, env)
                } else {
                    let a_inv = s.apply(Op::Inv, &[self.eval_term(a, env)?])?;
                    self.isolate(b, var, s.apply(Op::Mul, &[a_inv, target])?, env)
                }
            }
            Term::Add(a, b) => {
                let (inner, other) = if a.occurrences(var) > 0 { (a, b) } else { (b, a) };
                let other = self.eval_term(other, env)?;
                match s.solve_add(&target, &other) {
                    Some(t) => self.isolate(inner, var, t, env),
                    None => Ok(None),
                }
            }
            Term::Times(a, b) => {
                let (inner, other) = if a.occurrences(var) > 0 { (a, b) } else { (b, a) };
                let other = self.eval_term(other, env)?;
                let Some(parts) = s.solve_times(&target, &other) else {
                    return Ok(None);
                };
                let mut out = Vec::new();
                for p in parts {
                    match self.isolate(inner, var, p, env)? {
                        Some(vals) => out.extend(vals),
                        None => return Ok(None),
                    }
                }
                Ok(Some(out))
            }
            Term::Identity | Term::Zero | Term::One => Ok(None),
        }
    }
}

/// Collects a maximal block of like quantifiers.
fn block(f: &Formula, existential: bool) -> (Vec<String>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    loop {
        match (cur, existential) {
            (Formula::Exists(v, body), true) | (Formula::Forall(v, body), false) => {
                vars.push(v.clone());
                cur = body;
            }
            _ => return (vars, cur),
        }
    }
}

/// A conjunct of a search with its free variables.
#[derive(Clone)]
struct Conj {
    f: Rc<Formula>,
    free: Rc<BTreeSet<String>>,
}

impl Conj {
    fn new(f: Formula) -> Self {
        Conj {
            free: Rc::new(f.free_vars()),
            f: Rc::new(f),
        }
    }
}

struct Search {
    pending: Vec<String>,
    conjuncts: Vec<Conj>,
}

impl Search {
    /// Flattens conjunctions, drops `true`, pulls existentials into the
    /// pending block (renaming clashes) and forgets unused pending variables.
    fn normalize<E>(&mut self, env: &Env<E>) {
        let mut work = std::mem::take(&mut self.conjuncts);
        let mut out: Vec<Conj> = Vec::new();
        while let Some(c) = work.pop() {
            if !matches!(*c.f, Formula::True | Formula::And(..) | Formula::Exists(..)) {
                out.push(c);
                continue;
            }
            let f = Rc::try_unwrap(c.f).unwrap_or_else(|shared| (*shared).clone());
            match f {
                Formula::And(a, b) => {
                    work.push(Conj::new(*b));
                    work.push(Conj::new(*a));
                }
                Formula::Exists(v, body) => {
                    let clash = self.pending.contains(&v)
                        || env.iter().any(|(n, _)| *n == v)
                        || work.iter().chain(out.iter()).any(|o| o.free.contains(&v));
                    if clash {
                        let mut taken: BTreeSet<String> = self.pending.iter().cloned().collect();
                        taken.extend(env.iter().map(|(n, _)| n.clone()));
                        for other in work.iter().chain(out.iter()) {
                            taken.extend(other.free.iter().cloned());
                        }
                        taken.extend(body.all_vars());
                        let fresh = super::fresh_name(&v, &taken);
                        let renamed = super::subst::rename_free(&body, &v, &fresh);
                        self.pending.push(fresh);
                        work.push(Conj::new(renamed));
                    } else {
                        self.pending.push(v);
                        work.push(Conj::new(*body));
                    }
                }
                _ => {}
            }
        }
        self.pending.retain(|v| out.iter().any(|c| c.free.contains(v)));
        self.conjuncts = out;
    }
}
