//! Equations `Σ cⱼ·fⱼ·k^{Eⱼ} = 0` over ℤ with linear exponents `Eⱼ`, written
//! as ring formulas using non-negative `exp` atoms only.
//!
//! The builder splits on which exponent is minimal. Under that case each
//! difference `Eⱼ − E_min` is bound to a fresh `d ≥ 0` with `p = k^d`, and the
//! equation is divided by `k^{E_min}`. Constant differences are folded into
//! numerals and make impossible cases disappear.

use std::collections::{BTreeMap, BTreeSet};

use crate::fol::{Formula, Term};

/// `konst + Σ coeff·var`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Lin {
    konst: i64,
    coeffs: BTreeMap<String, i64>,
}

impl Lin {
    pub(crate) fn var(v: &str) -> Lin {
        Lin {
            konst: 0,
            coeffs: BTreeMap::from([(v.to_string(), 1)]),
        }
    }

    pub(crate) fn konst(c: i64) -> Lin {
        Lin {
            konst: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub(crate) fn plus(mut self, other: &Lin, sign: i64) -> Lin {
        self.konst += sign * other.konst;
        for (v, c) in &other.coeffs {
            *self.coeffs.entry(v.clone()).or_insert(0) += sign * c;
        }
        self.coeffs.retain(|_, c| *c != 0);
        self
    }

    fn as_const(&self) -> Option<i64> {
        self.coeffs.is_empty().then_some(self.konst)
    }

    /// The terms with coefficients of sign `sign`, as non-negative ring terms.
    fn part(&self, sign: i64) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .coeffs
            .iter()
            .filter(|(_, c)| c.signum() == sign)
            .map(|(v, c)| scaled(c.unsigned_abs(), Term::var(v)))
            .collect();
        if self.konst.signum() == sign {
            out.push(Term::numeral(self.konst.unsigned_abs()));
        }
        out
    }
}

/// `coef · Π factors · k^exp`.
#[derive(Clone, Debug)]
pub(crate) struct Mono {
    pub(crate) coef: i64,
    pub(crate) factors: Vec<Term>,
    pub(crate) exp: Lin,
}

impl Mono {
    pub(crate) fn new(coef: i64, factors: Vec<Term>, exp: Lin) -> Mono {
        Mono { coef, factors, exp }
    }
}

/// Names not occurring in `taken`, as `stem_1`, `stem_2`, …
#[derive(Clone, Debug, Default)]
pub(crate) struct Fresh {
    taken: BTreeSet<String>,
    next: usize,
}

impl Fresh {
    pub(crate) fn avoiding(taken: BTreeSet<String>) -> Fresh {
        Fresh { taken, next: 0 }
    }

    pub(crate) fn name(&mut self, stem: &str) -> String {
        loop {
            self.next += 1;
            let cand = format!("{stem}_{}", self.next);
            if self.taken.insert(cand.clone()) {
                return cand;
            }
        }
    }
}

fn scaled(c: u64, t: Term) -> Term {
    if c == 1 {
        t
    } else {
        Term::times(Term::numeral(c), t)
    }
}

/// `k^c` as a product of `c` numerals `k`.
fn k_power(k: u64, c: u64) -> Option<Term> {
    (c > 0).then(|| {
        std::iter::repeat_n(Term::numeral(k), c as usize)
            .reduce(Term::times)
            .expect("c > 0")
    })
}

fn product(factors: Vec<Term>) -> Term {
    factors.into_iter().reduce(Term::times).unwrap_or(Term::One)
}

/// `lhs = rhs` as a ring formula.
pub(crate) fn exp_eq(k: u64, lhs: Vec<Mono>, rhs: Vec<Mono>, fresh: &mut Fresh) -> Formula {
    let monos: Vec<Mono> = lhs
        .into_iter()
        .chain(rhs.into_iter().map(|m| Mono { coef: -m.coef, ..m }))
        .filter(|m| m.coef != 0)
        .collect();
    if monos.is_empty() {
        return Formula::True;
    }
    let mut exps: Vec<Lin> = Vec::new();
    for m in &monos {
        if !exps.contains(&m.exp) {
            exps.push(m.exp.clone());
        }
    }
    let mut cases = Vec::new();
    'candidate: for base in &exps {
        let mut guards = Vec::new();
        let mut bound = Vec::new();
        let mut factor: Vec<Option<Term>> = Vec::new();
        for e in &exps {
            let diff = e.clone().plus(base, -1);
            match diff.as_const() {
                Some(c) if c < 0 => continue 'candidate,
                Some(c) => factor.push(k_power(k, c as u64)),
                None => {
                    let (d, p) = (fresh.name("d"), fresh.name("p"));
                    let mut lhs = vec![Term::var(&d)];
                    lhs.extend(diff.part(-1));
                    guards.push(Formula::eq(Term::sum(lhs), Term::sum(diff.part(1))));
                    guards.push(Formula::exp(Term::var(&p), Term::numeral(k), Term::var(&d)));
                    factor.push(Some(Term::var(&p)));
                    bound.extend([d, p]);
                }
            }
        }
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for m in &monos {
            let j = exps.iter().position(|e| *e == m.exp).expect("collected");
            let mut fs = m.factors.clone();
            fs.extend(factor[j].clone());
            let t = scaled(m.coef.unsigned_abs(), product(fs));
            if m.coef > 0 {
                pos.push(t);
            } else {
                neg.push(t);
            }
        }
        guards.push(Formula::eq(Term::sum(pos), Term::sum(neg)));
        cases.push(Formula::exists_all(bound, Formula::and_all(guards)));
    }
    Formula::or_all(cases)
}

/// `lhs = rhs` for linear integer expressions.
pub(crate) fn lin_eq(lhs: &Lin, rhs: &Lin) -> Formula {
    let diff = lhs.clone().plus(rhs, -1);
    Formula::eq(Term::sum(diff.part(1)), Term::sum(diff.part(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{Evaluator, IntegerStructure};
    use num_bigint::BigInt;

    fn holds(f: &Formula, env: &[(&str, i64)]) -> Option<bool> {
        let s = IntegerStructure::new(5);
        let env: Vec<(String, BigInt)> = env.iter().map(|(v, n)| (v.to_string(), BigInt::from(*n))).collect();
        Evaluator::new(&s).evaluate(f, &env).unwrap().truth()
    }

    #[test]
    fn cross_multiplication_is_exact() {
        // z1·k^{i1} = z2·k^{i2}
        let mut fresh = Fresh::default();
        let f = exp_eq(
            2,
            vec![Mono::new(1, vec![Term::var("z1")], Lin::var("i1"))],
            vec![Mono::new(1, vec![Term::var("z2")], Lin::var("i2"))],
            &mut fresh,
        );
        for (z1, i1, z2, i2) in [(1, 1, 2, 0), (3, -2, 6, -3), (0, 4, 0, -7), (1, 0, 1, 1), (-5, 2, -20, 0)] {
            let expected = z1 as f64 * 2f64.powi(i1 as i32) == z2 as f64 * 2f64.powi(i2 as i32);
            let env = [("z1", z1), ("i1", i1), ("z2", z2), ("i2", i2)];
            assert_eq!(holds(&f, &env), Some(expected), "{env:?}");
        }
    }

    #[test]
    fn constant_offsets_fold_into_numerals() {
        // z·k^{i+1} = 6·k^{i}: one case, no exp atoms
        let mut fresh = Fresh::default();
        let f = exp_eq(
            3,
            vec![Mono::new(1, vec![Term::var("z")], Lin::var("i").plus(&Lin::konst(1), 1))],
            vec![Mono::new(6, vec![], Lin::var("i"))],
            &mut fresh,
        );
        assert!(f.is_quantifier_free());
        assert_eq!(holds(&f, &[("z", 2), ("i", -4)]), Some(true));
        assert_eq!(holds(&f, &[("z", 3), ("i", 0)]), Some(false));
    }

    #[test]
    fn linear_equations_move_negatives() {
        let f = lin_eq(&Lin::var("m3"), &Lin::var("m1").plus(&Lin::var("m2"), 1));
        assert_eq!(f.to_string(), "m3 = (m1 + m2)");
        let f = lin_eq(&Lin::var("mo"), &Lin::var("m").plus(&Lin::konst(0), 1).plus(&Lin::var("m"), -2));
        assert_eq!(f.to_string(), "(m + mo) = 0");
    }
}
