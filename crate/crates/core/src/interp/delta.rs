//! The absolute interpretation `Δ` of BS(1,k) in ℤ on triples `(z, i, m)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use super::expeq::{exp_eq, lin_eq, Fresh, Lin, Mono};
use super::{CodeFormula, InterpCode};
use crate::error::{Error, Result};
use crate::fol::{Definitions, Formula, Language, Term};
use crate::group::{BsElement, BsGroup};
use crate::rings::RingContext;

/// A point `(z, i, m)` of the base `ℤ³` of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub z: BigInt,
    pub i: i64,
    pub m: i64,
}

impl Triple {
    pub fn new(z: impl Into<BigInt>, i: i64, m: i64) -> Self {
        Triple { z: z.into(), i, m }
    }

    pub fn to_ring(&self) -> [BigInt; 3] {
        [self.z.clone(), BigInt::from(self.i), BigInt::from(self.m)]
    }

    /// Binds the tuple of `v` under [`code_delta`]'s naming.
    pub fn bind(&self, v: &str) -> Vec<(String, BigInt)> {
        ["z", "i", "m"]
            .iter()
            .zip(self.to_ring())
            .map(|(c, x)| (format!("{v}_{c}"), x))
            .collect()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.z, self.i, self.m)
    }
}

/// `μ_Δ(z, i, m) = (z·kⁱ, m)`.
pub fn mu_delta(g: &BsGroup, t: &Triple) -> BsElement {
    g.element(g.context().normalize(t.z.clone(), -t.i), t.m)
}

/// The canonical preimage `(num, −e, m)` of `(num·k^{−e}, m)`.
pub fn mu_delta_section(x: &BsElement) -> Triple {
    let e = i64::try_from(x.y.e()).expect("denominator exponent fits i64");
    Triple::new(x.y.num().clone(), -e, x.m)
}

fn coord(v: &str, c: &str) -> String {
    format!("{v}_{c}")
}

fn zk_mono(coef: i64, v: &str, exp: Lin) -> Mono {
    Mono::new(coef, vec![Term::var(coord(v, "z"))], exp)
}

fn lin(v: &str, c: &str) -> Lin {
    Lin::var(&coord(v, c))
}

fn fresh_for(vars: &[&str]) -> Fresh {
    let taken: BTreeSet<String> = vars
        .iter()
        .flat_map(|v| ["z", "i", "m"].map(|c| coord(v, c)))
        .collect();
    Fresh::avoiding(taken)
}

fn eq_vars(a: &str, b: &str) -> Formula {
    Formula::eq(Term::var(a), Term::var(b))
}

/// The code `Δ` over the ring language with `exp` atoms.
///
/// Exponents `i` may be negative; every `z₁k^{i₁} = z₂k^{i₂}` is written by
/// cross-multiplication into `exp` atoms with non-negative exponents.
pub fn code_delta(k: u64) -> Result<InterpCode> {
    RingContext::new(k as i64)?;
    let mut fresh = fresh_for(&["x", "y", "o"]);
    let mut graphs = BTreeMap::new();
    let mut functional = BTreeMap::new();

    let equiv = Formula::and(
        exp_eq(
            k,
            vec![zk_mono(1, "x", lin("x", "i"))],
            vec![zk_mono(1, "y", lin("y", "i"))],
            &mut fresh,
        ),
        eq_vars(&coord("x", "m"), &coord("y", "m")),
    );

    let m_sum = lin_eq(&lin("o", "m"), &lin("x", "m").plus(&lin("y", "m"), 1));
    // y_i − x_m, the exponent of the second summand
    let shifted = lin("y", "i").plus(&lin("x", "m"), -1);
    let mul = Formula::and(
        m_sum.clone(),
        exp_eq(
            k,
            vec![zk_mono(1, "o", lin("o", "i"))],
            vec![zk_mono(1, "x", lin("x", "i")), zk_mono(1, "y", shifted.clone())],
            &mut fresh,
        ),
    );
    graphs.insert("mul".to_string(), CodeFormula::new(["x", "y", "o"], mul));

    // the second case is strict so that at most one case holds
    let mut cases = Vec::new();
    for (low, high, low_z, high_z, strict) in [
        (lin("x", "i"), shifted.clone(), "x", "y", false),
        (shifted.clone(), lin("x", "i"), "y", "x", true),
    ] {
        let (d, p) = (fresh.name("d"), fresh.name("p"));
        let mut diff = lin_eq(&Lin::var(&d).plus(&low, 1), &high);
        if strict {
            diff = Formula::and(diff, Formula::not(Formula::eq(Term::var(&d), Term::Zero)));
        }
        let scaled = Term::times(Term::var(coord(high_z, "z")), Term::var(&p));
        let z_out = Formula::eq(
            Term::var(coord("o", "z")),
            Term::add(Term::var(coord(low_z, "z")), scaled),
        );
        let body = Formula::and_all([
            diff,
            Formula::exp(Term::var(&p), Term::numeral(k), Term::var(&d)),
            lin_eq(&lin("o", "i"), &low),
            z_out,
        ]);
        cases.push(Formula::exists_all([d, p], body));
    }
    let mul_f = Formula::and(m_sum, Formula::or_all(cases));
    functional.insert("mul".to_string(), CodeFormula::new(["x", "y", "o"], mul_f));

    let m_neg = lin_eq(&lin("o", "m").plus(&lin("x", "m"), 1), &Lin::konst(0));
    let inv = Formula::and(
        exp_eq(
            k,
            vec![
                zk_mono(1, "o", lin("o", "i")),
                zk_mono(1, "x", lin("x", "i").plus(&lin("x", "m"), 1)),
            ],
            vec![],
            &mut fresh,
        ),
        m_neg.clone(),
    );
    graphs.insert("inv".to_string(), CodeFormula::new(["x", "o"], inv));
    let inv_f = Formula::and_all([
        lin_eq(&lin("o", "z").plus(&lin("x", "z"), 1), &Lin::konst(0)),
        lin_eq(&lin("o", "i"), &lin("x", "i").plus(&lin("x", "m"), 1)),
        m_neg,
    ]);
    functional.insert("inv".to_string(), CodeFormula::new(["x", "o"], inv_f));

    let zero = |c: &str| Formula::eq(Term::var(coord("o", c)), Term::Zero);
    graphs.insert("e".to_string(), CodeFormula::new(["o"], Formula::and(zero("z"), zero("m"))));
    functional.insert(
        "e".to_string(),
        CodeFormula::new(["o"], Formula::and_all([zero("z"), zero("i"), zero("m")])),
    );

    let code = InterpCode {
        name: "delta".into(),
        source: Language::Group,
        target: Language::Ring,
        coords: ["z", "i", "m"].map(String::from).to_vec(),
        params: vec![],
        domain: CodeFormula::new(["x"], Formula::True),
        equiv: CodeFormula::new(["x", "y"], equiv),
        graphs,
        functional,
        definitions: Definitions::new(),
    };
    code.validate()?;
    Ok(code)
}

/// `θ_ℤ(zt, it, mt, x, za, ia, ma, zb, ib, mb)`.
pub fn theta_z(k: u64) -> Result<Formula> {
    theta_z_formula(k, false)
}

/// `θ_ℤ`, or with `mutate` the same formula with the sign of `z_b` flipped.
///
/// `zt·kⁱᵗ = zb·k^{ib}·(k^{−mt} − 1)/(k^{−1} − 1)` is multiplied out to
/// `zt·k^{it} + zb·k^{ib+1} = zt·k^{it+1} + zb·k^{ib+1−mt}`.
pub fn theta_z_formula(k: u64, mutate: bool) -> Result<Formula> {
    RingContext::new(k as i64)?;
    let names = ["zt", "it", "mt", "x", "za", "ia", "ma", "zb", "ib", "mb"];
    let mut fresh = Fresh::avoiding(names.iter().map(|s| s.to_string()).collect());
    let one = Lin::konst(1);
    let t = |e: Lin| Mono::new(1, vec![Term::var("zt")], e);
    let b = |e: Lin| Mono::new(1, vec![Term::var("zb")], e);
    let it = Lin::var("it");
    let ib1 = Lin::var("ib").plus(&one, 1);
    let ib1_mt = ib1.clone().plus(&Lin::var("mt"), -1);
    let (b_left, b_right) = if mutate { (ib1_mt, ib1) } else { (ib1, ib1_mt) };
    let eq = exp_eq(
        k,
        vec![t(it.clone()), b(b_left)],
        vec![t(it.plus(&one, 1)), b(b_right)],
        &mut fresh,
    );
    Ok(Formula::and(eq_vars("x", "mt"), eq))
}

pub(crate) fn theta_z_value(k: u64, args: [i64; 4], params: [i64; 6], mutate: bool) -> Result<bool> {
    let ctx = RingContext::new(k as i64)?;
    let [zt, it, mt, x] = args;
    let [za, ia, ma, zb, ib, mb] = params;
    let a1 = ctx.normalize(za.into(), -ia);
    if !a1.is_unit() || ma != 0 || mb != 1 {
        return Err(Error::Precondition(format!(
            "parameters ({za}, {ia}, {ma}, {zb}, {ib}, {mb}) do not encode a pair in A₁ × Ab"
        )));
    }
    let sign = if mutate { -1 } else { 1 };
    let lhs = &ctx.normalize(zt.into(), -it) * &ctx.k_pow_minus_one(-1);
    let rhs = &ctx.normalize((sign * zb).into(), -ib) * &ctx.k_pow_minus_one(-mt);
    Ok(x == mt && lhs == rhs)
}

/// The displayed `θ_ℤ` in exact ℤ[1/k] arithmetic.
pub fn theta_z_check(k: u64, args: [i64; 4], params: [i64; 6]) -> Result<bool> {
    theta_z_value(k, args, params, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{Evaluator, IntegerStructure};

    fn eval(f: &Formula, env: Vec<(String, BigInt)>) -> Option<bool> {
        let s = IntegerStructure::new(4);
        Evaluator::new(&s).evaluate(f, &env).unwrap().truth()
    }

    #[test]
    fn coordinate_map_examples() {
        let g = BsGroup::new(2).unwrap();
        assert_eq!(mu_delta(&g, &Triple::new(1, 0, 0)), g.a());
        assert_eq!(mu_delta(&g, &Triple::new(3, -1, 2)), g.elem(3, 1, 2));
        let ab = g.mul(&g.a(), &g.b());
        assert_eq!(mu_delta_section(&ab), Triple::new(1, 0, 1));
        let x = g.elem(5, 3, -2);
        assert_eq!(mu_delta(&g, &mu_delta_section(&x)), x);
    }

    #[test]
    fn equivalence_example() {
        let d = code_delta(2).unwrap();
        let mut env = Triple::new(1, 1, 0).bind("x");
        env.extend(Triple::new(2, 0, 0).bind("y"));
        assert_eq!(eval(&d.equiv.body, env), Some(true));
        let mut env = Triple::new(1, 1, 0).bind("x");
        env.extend(Triple::new(3, 0, 0).bind("y"));
        assert_eq!(eval(&d.equiv.body, env), Some(false));
    }

    #[test]
    fn graphs_compute_products_and_inverses() {
        let g = BsGroup::new(2).unwrap();
        let d = code_delta(2).unwrap();
        let mut env = Triple::new(1, 0, 0).bind("x");
        env.extend(Triple::new(0, 0, 1).bind("y"));
        env.extend(Triple::new(1, 0, 1).bind("o"));
        assert_eq!(eval(&d.graphs["mul"].body, env.clone()), Some(true));
        assert_eq!(eval(&d.functional["mul"].body, env), Some(true));
        let mut env = Triple::new(1, 0, 1).bind("x");
        env.extend(Triple::new(-1, 1, -1).bind("o"));
        assert_eq!(eval(&d.functional["inv"].body, env.clone()), Some(true));
        assert_eq!(eval(&d.graphs["inv"].body, env), Some(true));
        let x = mu_delta(&g, &Triple::new(1, 0, 1));
        assert_eq!(g.inv(&x), mu_delta(&g, &Triple::new(-1, 1, -1)));
    }

    #[test]
    fn theta_z_examples() {
        let pair_a_ab = [1, 0, 0, 1, 0, 1];
        assert!(theta_z_check(2, [3, -1, 2, 2], pair_a_ab).unwrap());
        assert!(!theta_z_check(2, [1, 0, 2, 1], pair_a_ab).unwrap());
        for i in -3..=3 {
            for m in -3..=3 {
                assert!(theta_z_check(2, [0, i, m, m], [1, 0, 0, 0, 0, 1]).unwrap());
            }
        }
        assert!(theta_z_check(2, [1, 0, 0, 0], [3, 0, 0, 0, 0, 1]).is_err());
        let f = theta_z(2).unwrap();
        let env: Vec<(String, BigInt)> = ["zt", "it", "mt", "x", "za", "ia", "ma", "zb", "ib", "mb"]
            .iter()
            .zip([3, -1, 2, 2, 1, 0, 0, 1, 0, 1])
            .map(|(v, n)| (v.to_string(), BigInt::from(n)))
            .collect();
        assert_eq!(eval(&f, env), Some(true));
    }
}
