use serde::Serialize;

use super::{in_a1, semantic, witness_check, Name, WitnessConfig};
use crate::error::Result;
use crate::fol::GroupBox;
use crate::group::{BsElement, BsGroup};

/// One tuple on which the witness checker failed to confirm the semantics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub args: Vec<String>,
    pub semantic: bool,
    /// `None` for an inconclusive witness verdict.
    pub witness: Option<bool>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub k: u64,
    pub checked: usize,
    pub negatives: usize,
    pub disagreements: Vec<Disagreement>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the semantic predicate with the witness verdict on every tuple.
///
/// An inconclusive verdict counts as a disagreement, as does a negative one
/// without an explicit counterexample.
pub fn agreement_sweep(
    g: &BsGroup,
    name: Name,
    tuples: &[Vec<BsElement>],
    cfg: &WitnessConfig,
) -> Result<SweepReport> {
    let mut report = SweepReport {
        name: name.to_string(),
        k: g.k(),
        checked: 0,
        negatives: 0,
        disagreements: Vec::new(),
    };
    for args in tuples {
        let expected = semantic(g, name, args)?;
        let witnessed = witness_check(g, name, args, cfg)?;
        report.checked += 1;
        let got = witnessed.verdict.truth();
        let reason = if got != Some(expected) {
            Some(
                witnessed
                    .details
                    .iter()
                    .find(|(k, _)| k == "inconclusive")
                    .map_or_else(|| "verdict differs".to_string(), |(_, v)| v.clone()),
            )
        } else if !expected {
            report.negatives += 1;
            witnessed
                .counterexample()
                .is_none()
                .then(|| "negative verdict without a counterexample".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            report.disagreements.push(Disagreement {
                args: args.iter().map(ToString::to_string).collect(),
                semantic: expected,
                witness: got,
                reason,
            });
        }
    }
    Ok(report)
}

/// Sample elements of `Ab`: `b`, `ab`, `a⁻¹b` and `a^{1/k}b`.
pub fn ab_samples(g: &BsGroup) -> Vec<BsElement> {
    vec![
        g.b(),
        g.mul(&g.a(), &g.b()),
        g.mul(&g.inv(&g.a()), &g.b()),
        g.elem(1, 1, 1),
    ]
}

/// Sample elements of `A₁`: `a`, `a⁻¹`, `a^k` and `a^{1/k}`.
pub fn a1_samples(g: &BsGroup) -> Vec<BsElement> {
    let k = g.k() as i64;
    let out = vec![g.a(), g.inv(&g.a()), g.elem(k, 0, 0), g.elem(1, 1, 0)];
    debug_assert!(out.iter().all(in_a1));
    out
}

/// The documented tuples for each formula at the group `g`.
///
/// `tau` covers the `cor5` shape `τ(a₁, u, h, b₁)` through its `A₁` rows.
pub fn standard_tuples(g: &BsGroup, name: Name) -> Vec<Vec<BsElement>> {
    let box_elems = GroupBox::default().elements(g);
    let b1s = ab_samples(g);
    match name {
        Name::Alpha | Name::Beta => box_elems.into_iter().map(|x| vec![x]).collect(),
        Name::Delta => {
            let mut out = Vec::new();
            for b1 in &b1s {
                for m in -4..=4 {
                    for n in -4..=4 {
                        out.push(vec![g.pow(b1, m), g.pow(b1, n)]);
                    }
                }
            }
            out
        }
        Name::Pronic => {
            let mut out = Vec::new();
            for t in &b1s[..3] {
                for n in -3i64..=3 {
                    let p = n * (n + 1);
                    for j in [p, -p, p + 1, 0, n] {
                        out.push(vec![g.pow(t, n), g.pow(t, j), t.clone()]);
                    }
                    out.push(vec![g.a(), g.pow(t, p), t.clone()]);
                }
            }
            out.dedup();
            out
        }
        Name::Gamma => {
            let mut out = Vec::new();
            for t in &b1s[..3] {
                for n in -3..=3 {
                    for l in -3..=3 {
                        for m in [n * l, n * l + 1, -n * l] {
                            out.push(vec![g.pow(t, n), g.pow(t, l), g.pow(t, m), t.clone()]);
                        }
                    }
                }
            }
            out.dedup();
            out
        }
        Name::Tau => tau_tuples(g, &b1s),
        Name::Pi => {
            let mut out: Vec<Vec<BsElement>> = (-30..=30)
                .flat_map(|num| [g.elem(num, 0, 0), g.elem(num, 1, 0)])
                .map(|x| vec![x])
                .collect();
            out.extend([g.b(), g.elem(1, 0, -1), g.elem(3, 1, 2)].map(|x| vec![x]));
            out
        }
        Name::ThetaBs => {
            let (a1, b1) = (g.a(), g.b());
            let mut out = Vec::new();
            for (z, i, m) in [(1, 0, 0), (1, 1, 1), (2, 0, -1), (0, 2, 1), (-1, 1, 0)] {
                let x = super::super::interp::theta_bs_image(g, &a1, &b1, z, i, m);
                let base = [g.pow(&b1, z), g.pow(&b1, i), g.pow(&b1, m)];
                out.push(base.iter().cloned().chain([x.clone(), a1.clone(), b1.clone()]).collect());
                let off = g.mul(&x, &g.a());
                out.push(base.iter().cloned().chain([off, a1.clone(), b1.clone()]).collect());
            }
            out
        }
        Name::ThetaZ => Vec::new(),
    }
}

fn tau_tuples(g: &BsGroup, b1s: &[BsElement]) -> Vec<Vec<BsElement>> {
    let mut xs = a1_samples(g);
    xs.extend([g.identity(), g.elem(3, 0, 0), g.elem(6, 1, 0)]);
    let mut out = Vec::new();
    for b1 in b1s {
        for x in &xs {
            for z in -2..=2 {
                let h = g.pow(b1, z);
                let t = x.y.mul_int(&z.into());
                for y in [t.clone(), &t + &g.context().one(), t.shift(1), -&t] {
                    let row = vec![x.clone(), BsElement::new(y, 0), h.clone(), b1.clone()];
                    if !out.contains(&row) {
                        out.push(row);
                    }
                }
            }
        }
        out.push(vec![g.b(), g.a(), b1.clone(), b1.clone()]);
        out.push(vec![g.a(), g.a(), g.a(), b1.clone()]);
    }
    out.push(vec![g.a(), g.a(), g.identity(), g.a()]);
    out.push(vec![g.a(), g.elem(1, 0, 1), g.identity(), g.b()]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distinct_in_default_box(k: i64) -> usize {
        use num_rational::Ratio;
        let mut seen = std::collections::HashSet::new();
        for z in -3i64..=3 {
            for i in 0..=3u32 {
                for m in -3..=3 {
                    seen.insert((Ratio::new(z, k.pow(i)), m));
                }
            }
        }
        seen.len()
    }

    #[test]
    fn alpha_and_beta_agree_on_the_box() {
        for k in [2, 3, 6] {
            let g = BsGroup::new(k).unwrap();
            let cfg = WitnessConfig::new(&g);
            for name in [Name::Alpha, Name::Beta] {
                let r = agreement_sweep(&g, name, &standard_tuples(&g, name), &cfg).unwrap();
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.checked, distinct_in_default_box(k));
            }
        }
    }

    #[test]
    fn mutated_delta_is_caught() {
        let g = BsGroup::new(2).unwrap();
        let mut cfg = WitnessConfig::new(&g);
        let tuples = standard_tuples(&g, Name::Delta);
        assert!(agreement_sweep(&g, Name::Delta, &tuples, &cfg).unwrap().passed());
        cfg.mutate_delta = true;
        assert!(!agreement_sweep(&g, Name::Delta, &tuples, &cfg).unwrap().passed());
    }
}
