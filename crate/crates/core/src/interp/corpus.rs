//! A fixed corpus of quantifier-free formulas pushed through `Δ` and `Γ`.
//!
//! Each translated formula is evaluated in the target on preimages of the
//! source assignment and compared with the source formula evaluated directly.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::{code_delta, code_gamma, mu_delta, translate, BiinterpBox, ParamPair, Triple, Violation};
use crate::definable::{WitnessConfig, WitnessOracle};
use crate::error::Result;
use crate::fol::{parse_formula, Evaluator, Formula, GroupStructure, IntegerStructure, Language};
use crate::group::BsGroup;

const GROUP: [&str; 12] = [
    "x * y = y * x",
    "[x, y] = e",
    "x * inv(x) = e",
    "x * y = e",
    "x^2 = y",
    "inv(x) * y * x = y^2",
    "x = y | x * y = y * x * y",
    "~(x = e) & x^3 = y",
    "(x * y)^2 = x^2 * y^2",
    "inv(y) * x * y = x -> x = e",
    "[x, y] = [y, x]",
    "x * (y * x) = (x * y) * x & ~(y = e)",
];

const RING: [&str; 12] = [
    "x + y = y + x",
    "x * y = y * x",
    "x + 1 = y",
    "x * x = y",
    "x * (y + 1) = x * y + x",
    "1 + 1 + 1 = y",
    "x * y = 0 -> x = 0 | y = 0",
    "x + x = y * (1 + 1)",
    "~(x = 0) & x * y = 1",
    "exp(y, x, 1 + 1)",
    "(x + 1) * (x + 1) = x * x + (1 + 1) * x + 1",
    "x * y + y = 0",
];

/// The group corpus, parsed.
pub fn corpus_group() -> Vec<Formula> {
    GROUP
        .iter()
        .map(|s| parse_formula(s, Language::Group).expect("corpus parses"))
        .collect()
}

/// The ring corpus, parsed.
pub fn corpus_ring() -> Vec<Formula> {
    RING.iter()
        .map(|s| parse_formula(s, Language::Ring).expect("corpus parses"))
        .collect()
}

/// Triples for the group side, integers `|n| ≤ n_max` for the ring side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusBox {
    pub triples: BiinterpBox,
    pub n_max: i64,
}

impl Default for CorpusBox {
    fn default() -> Self {
        CorpusBox {
            triples: BiinterpBox {
                z_max: 1,
                i_min: -1,
                i_max: 1,
                m_max: 1,
            },
            n_max: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub k: u64,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CorpusReport {
    fn record(&mut self, check: &str, instance: String, expected: Option<bool>, got: Option<bool>) {
        self.checked += 1;
        if expected.is_none() || got != expected {
            let show = |v: Option<bool>| v.map_or_else(|| "inconclusive".to_string(), |b| b.to_string());
            self.violations.push(Violation {
                check: check.into(),
                instance,
                expected: show(expected),
                got: show(got),
            });
        }
    }
}

/// Runs both corpora: group formulas through `Δ` on all pairs of box triples,
/// ring formulas through `Γ` on all pairs of integers for each sample `b₁`.
pub fn check_corpus(k: u64, bx: &CorpusBox) -> Result<CorpusReport> {
    let g = BsGroup::new(k as i64)?;
    let mut report = CorpusReport {
        k,
        checked: 0,
        violations: Vec::new(),
    };

    let delta = code_delta(k)?;
    let ints = IntegerStructure::new(2);
    let direct = GroupStructure::with_domain(g.clone(), vec![]);
    let triples: Vec<Triple> = bx.triples.triples().into_iter().map(|(z, i, m)| Triple::new(z, i, m)).collect();
    for (src, phi) in GROUP.iter().zip(corpus_group()) {
        let translated = translate(&phi, &delta)?;
        for s in &triples {
            for t in &triples {
                let (x, y) = (mu_delta(&g, s), mu_delta(&g, t));
                let expected = Evaluator::new(&direct)
                    .evaluate(&phi, &[("x".into(), x), ("y".into(), y)])?
                    .truth();
                let mut env = s.bind("x");
                env.extend(t.bind("y"));
                let got = Evaluator::new(&ints).evaluate(&translated, &env)?.truth();
                report.record("group through delta", format!("{src} at x = {s}, y = {t}"), expected, got);
            }
        }
    }

    let gamma = code_gamma(k)?;
    let cfg = WitnessConfig::new(&g);
    let integers = IntegerStructure::new(bx.n_max);
    for pair in ParamPair::samples(&g).into_iter().take(2) {
        let oracle = Arc::new(WitnessOracle::new(g.clone(), cfg.clone()));
        let target = GroupStructure::with_domain(g.clone(), vec![]).with_oracle(oracle);
        for (src, phi) in RING.iter().zip(corpus_ring()) {
            let translated = translate(&phi, &gamma)?;
            for n in -bx.n_max..=bx.n_max {
                for l in -bx.n_max..=bx.n_max {
                    let env = [("x".to_string(), BigInt::from(n)), ("y".to_string(), BigInt::from(l))];
                    let expected = Evaluator::new(&integers).evaluate(&phi, &env)?.truth();
                    let env = [
                        ("x".to_string(), g.pow(&pair.b1, n)),
                        ("y".to_string(), g.pow(&pair.b1, l)),
                        ("pa".to_string(), pair.a1.clone()),
                        ("pb".to_string(), pair.b1.clone()),
                    ];
                    let got = Evaluator::new(&target)
                        .with_definitions(&gamma.definitions)
                        .evaluate(&translated, &env)?
                        .truth();
                    let instance = format!("{src} at x = {n}, y = {l}, b1 = {}", pair.b1);
                    report.record("ring through gamma", instance, expected, got);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_parse_and_are_quantifier_free() {
        assert!(corpus_group().iter().all(Formula::is_quantifier_free));
        assert!(corpus_ring().iter().all(Formula::is_quantifier_free));
    }

    #[test]
    fn corpus_passes_for_k2() {
        let bx = CorpusBox {
            triples: BiinterpBox {
                z_max: 1,
                i_min: 0,
                i_max: 1,
                m_max: 1,
            },
            n_max: 2,
        };
        let r = check_corpus(2, &bx).unwrap();
        assert!(r.violations.is_empty(), "{:#?}", &r.violations[..r.violations.len().min(5)]);
        assert_eq!(r.checked, 12 * 18 * 18 + 2 * 12 * 25);
    }
}
