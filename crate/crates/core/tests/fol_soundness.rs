//! The bounded evaluator against brute force on a finite ring, and its
//! conclusive verdicts on ℤ against their own witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bsinterp::fol::{parse_formula, Evaluator, Formula, IntegerStructure, Language, Op, Structure, Term, Verdict};
use bsinterp::Result;

const P: u32 = 5;

/// ℤ/5 as a ring whose box is the whole structure.
struct Mod5 {
    domain: Vec<u32>,
}

impl Mod5 {
    fn new() -> Self {
        Mod5 { domain: (0..P).collect() }
    }
}

impl Structure for Mod5 {
    type Elem = u32;

    fn language(&self) -> Language {
        Language::Ring
    }

    fn domain(&self) -> &[u32] {
        &self.domain
    }

    fn domain_is_complete(&self) -> bool {
        true
    }

    fn apply(&self, op: Op, args: &[u32]) -> Result<u32> {
        Ok(match (op, args) {
            (Op::Zero, []) => 0,
            (Op::One, []) => 1,
            (Op::Add, [a, b]) => (a + b) % P,
            (Op::Times, [a, b]) => (a * b) % P,
            _ => unreachable!("ring symbols only"),
        })
    }

    fn solve_add(&self, target: &u32, b: &u32) -> Option<u32> {
        Some((target + P - b) % P)
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..5) {
            0 => Term::Zero,
            1 => Term::One,
            i => Term::var(VARS[i - 2]),
        };
    }
    let (a, b) = (random_term(rng, depth - 1), random_term(rng, depth - 1));
    if rng.gen_bool(0.5) {
        Term::add(a, b)
    } else {
        Term::times(a, b)
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return Formula::eq(random_term(rng, 2), random_term(rng, 2));
    }
    let v = VARS[rng.gen_range(0..VARS.len())];
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::and(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        2 => Formula::or(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        3 => Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        4 => Formula::exists(v, random_formula(rng, depth - 1)),
        _ => Formula::forall(v, random_formula(rng, depth - 1)),
    }
}

fn lookup(env: &[(String, u32)], v: &str) -> u32 {
    env.iter().rev().find(|(n, _)| n == v).map(|(_, x)| *x).expect("bound")
}

fn term_mod5(t: &Term, env: &[(String, u32)]) -> u32 {
    match t {
        Term::Var(v) => lookup(env, v),
        Term::Zero => 0,
        Term::One => 1,
        Term::Add(a, b) => (term_mod5(a, env) + term_mod5(b, env)) % P,
        Term::Times(a, b) => (term_mod5(a, env) * term_mod5(b, env)) % P,
        _ => unreachable!("ring terms only"),
    }
}

fn brute(f: &Formula, env: &mut Vec<(String, u32)>) -> bool {
    let mut quant = |v: &String, body: &Formula, want_all: bool| {
        let mut results = (0..P).map(|x| {
            env.push((v.clone(), x));
            let r = brute(body, env);
            env.pop();
            r
        });
        if want_all {
            results.all(|r| r)
        } else {
            results.any(|r| r)
        }
    };
    match f {
        Formula::True => true,
        Formula::Eq(a, b) => term_mod5(a, env) == term_mod5(b, env),
        Formula::Not(a) => !brute(a, env),
        Formula::And(a, b) => brute(a, env) && brute(b, env),
        Formula::Or(a, b) => brute(a, env) || brute(b, env),
        Formula::Implies(a, b) => !brute(a, env) || brute(b, env),
        Formula::Exists(v, body) => quant(v, body, false),
        Formula::Forall(v, body) => quant(v, body, true),
        _ => unreachable!("no exp atoms or predicates"),
    }
}

#[test]
fn complete_box_agrees_with_brute_force() {
    let s = Mod5::new();
    let ev = Evaluator::new(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..400 {
        let f = random_formula(&mut rng, 4);
        for x in 0..P {
            for y in 0..P {
                let env: Vec<(String, u32)> = vec![("x".into(), x), ("y".into(), y), ("z".into(), (x + 2 * y) % P)];
                let want = brute(&f, &mut env.clone());
                let got = ev.evaluate(&f, &env).unwrap();
                assert_eq!(got.truth(), Some(want), "{f} at {env:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 400 * 25);
}

#[test]
fn existential_witnesses_satisfy_the_matrix() {
    let s = Mod5::new();
    let ev = Evaluator::new(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut witnessed = 0;
    for _ in 0..300 {
        let body = random_formula(&mut rng, 2);
        let f = Formula::exists_all(["x", "y"], body.clone());
        let env = vec![("z".to_string(), rng.gen_range(0..P))];
        if let Verdict::ConclusiveTrue(w) = ev.evaluate(&f, &env).unwrap() {
            let mut full = env.clone();
            full.extend(w.iter().cloned());
            // unconstrained variables may be left out of the witness
            for v in ["x", "y"] {
                if !full.iter().any(|(n, _)| n == v) {
                    full.push((v.to_string(), 0));
                }
            }
            if w.len() == 2 {
                assert!(brute(&body, &mut full), "{f} with {w:?}");
                witnessed += 1;
            }
        }
    }
    assert!(witnessed > 0);
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn integer_divisibility_is_decided_exactly() {
    let s = IntegerStructure::new(6);
    let ev = Evaluator::new(&s);
    let f = parse_formula("E x . (x * c = d)", Language::Ring).unwrap();
    for c in -12i64..=12 {
        for d in -40i64..=40 {
            let env = vec![("c".to_string(), big(c)), ("d".to_string(), big(d))];
            let got = ev.evaluate(&f, &env).unwrap();
            match got.truth() {
                Some(t) => {
                    let want = if c == 0 { d == 0 } else { d.is_multiple_of(&c) };
                    assert_eq!(t, want, "c={c} d={d}");
                    if let Verdict::ConclusiveTrue(w) = &got {
                        assert_eq!(&w[0].1 * big(c), big(d));
                    }
                }
                // `0·x = 0` needs no search but every `x` works; only c = 0 may stay open
                None => assert_eq!(c, 0, "d={d}"),
            }
        }
    }
}

#[test]
fn integer_verdicts_are_sound() {
    let s = IntegerStructure::new(4);
    let ev = Evaluator::new(&s);
    let cases: [(&str, fn(i64) -> bool); 4] = [
        ("E x . (x + x = d)", |d| d % 2 == 0),
        ("E x . (x + 1 = d)", |_| true),
        ("A x . ~(x + x = d + d + 1)", |_| true),
        // d = y - y² for some y
        ("E x . E y . (x + y = d & x + y * y = 0)", |d| (-10i64..=10).any(|y| y - y * y == d)),
    ];
    for (src, truth) in cases {
        let f = parse_formula(src, Language::Ring).unwrap();
        for d in -30i64..=30 {
            let env = vec![("d".to_string(), big(d))];
            let got = ev.evaluate(&f, &env).unwrap();
            if let Some(t) = got.truth() {
                assert_eq!(t, truth(d), "{src} at d={d}");
            }
            if let Verdict::ConclusiveTrue(w) = &got {
                let mut full = env.clone();
                full.extend(w.iter().cloned());
                let body = strip_exists(&f);
                assert!(ev.evaluate(body, &full).unwrap().is_true(), "{src} witness {w:?}");
            }
        }
    }
    // a parity fact no finite search can settle stays open rather than false
    let f = parse_formula("E x . (x + x = 1)", Language::Ring).unwrap();
    let v = ev.evaluate(&f, &[]).unwrap();
    assert!(!v.is_true());
}

fn strip_exists(f: &Formula) -> &Formula {
    match f {
        Formula::Exists(_, body) => strip_exists(body),
        other => other,
    }
}
