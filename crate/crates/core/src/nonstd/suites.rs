use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ExpRing, Frac, FracElement, IntRing, NonstdGroup, SymExp, SymExpo, SymRing};
use crate::error::Result;
use crate::fol::GroupBox;
use crate::group::{BsElement, BsGroup, Element, GroupElement, SemiDirect};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub ring: String,
    pub checked: usize,
    /// Instances where some power was undefined.
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl LawReport {
    fn record(&mut self, outcome: Option<bool>, what: impl FnOnce() -> String) {
        match outcome {
            None => self.skipped += 1,
            Some(true) => self.checked += 1,
            Some(false) => {
                self.checked += 1;
                self.violations.push(what());
            }
        }
    }
}

fn ring_pow<R: ExpRing>(ring: &R, x: &R::Elem, n: u64) -> R::Elem {
    (0..n).fold(ring.one(), |acc, _| ring.mul(&acc, x))
}

/// `(k^{i₁})^{i₂} = k^{i₁i₂}`, with the outer power taken by repeated
/// multiplication along whichever exponent is a standard integer.
fn power_law<R: ExpRing>(ring: &R, i1: &R::Exp, i2: &R::Exp) -> Option<bool> {
    let target = ring.k_pow(&ring.exp_mul(i1, i2).ok()?).ok()?;
    let (base, n) = match (ring.exp_as_int(i2), ring.exp_as_int(i1)) {
        (Some(n), _) => (i1, n),
        (None, Some(n)) => (i2, n),
        (None, None) => return None,
    };
    if n.unsigned_abs() > 64 {
        return None;
    }
    let p = ring_pow(ring, &ring.k_pow(base).ok()?, n.unsigned_abs());
    Some(if n >= 0 { p == target } else { ring.mul(&p, &target) == ring.one() })
}

/// Checks every exp-ring law on all pairs from `exps`.
pub fn expring_laws_suite<R: ExpRing>(ring: &R, exps: &[R::Exp]) -> LawReport {
    let mut report = LawReport {
        ring: ring.name(),
        checked: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    let zero = ring.exp_from_int(0);
    let one = ring.exp_from_int(1);
    report.record(ring.k_pow(&zero).ok().map(|v| v == ring.one()), || "k^0 ≠ 1".into());
    report.record(
        ring.k_pow(&one).ok().map(|v| v == ring.from_int(ring.k() as i64)),
        || "k^1 ≠ k".into(),
    );
    let pows: Vec<Option<R::Elem>> = exps.iter().map(|i| ring.k_pow(i).ok()).collect();
    for (i, p) in exps.iter().zip(&pows) {
        report.record(p.as_ref().map(|v| ring.signum(v) == 1), || format!("k^({i}) is not positive"));
    }
    for (i1, p1) in exps.iter().zip(&pows) {
        for (i2, p2) in exps.iter().zip(&pows) {
            let sum = ring.k_pow(&ring.exp_add(i1, i2)).ok();
            let product = match (p1, p2, sum) {
                (Some(a), Some(b), Some(c)) => Some(ring.mul(a, b) == c),
                _ => None,
            };
            report.record(product, || format!("k^({i1})·k^({i2}) ≠ k^({i1} + {i2})"));
            report.record(power_law(ring, i1, i2), || format!("(k^({i1}))^({i2}) ≠ k^(({i1})·({i2}))"));
            let injective = match (p1, p2) {
                (Some(a), Some(b)) => Some(a != b || i1 == i2),
                _ => None,
            };
            report.record(injective, || format!("k^({i1}) = k^({i2}) with {i1} ≠ {i2}"));
        }
    }
    report
}

/// A ring whose `k^from` returns `k^to`; used to show the law suite can fail.
#[derive(Clone, Debug)]
pub struct MutatedExpRing<R: ExpRing> {
    pub inner: R,
    pub from: R::Exp,
    pub to: R::Exp,
}

impl<R: ExpRing> ExpRing for MutatedExpRing<R> {
    type Elem = R::Elem;
    type Exp = R::Exp;

    fn name(&self) -> String {
        format!("{} with k^({}) := k^({})", self.inner.name(), self.from, self.to)
    }

    fn k(&self) -> u64 {
        self.inner.k()
    }

    fn from_int(&self, n: i64) -> R::Elem {
        self.inner.from_int(n)
    }

    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.inner.add(a, b)
    }

    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.inner.neg(a)
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.inner.mul(a, b)
    }

    fn signum(&self, a: &R::Elem) -> i8 {
        self.inner.signum(a)
    }

    fn exp_from_int(&self, n: i64) -> R::Exp {
        self.inner.exp_from_int(n)
    }

    fn exp_as_int(&self, i: &R::Exp) -> Option<i64> {
        self.inner.exp_as_int(i)
    }

    fn exp_standard_part(&self, i: &R::Exp) -> i64 {
        self.inner.exp_standard_part(i)
    }

    fn exp_add(&self, i: &R::Exp, j: &R::Exp) -> R::Exp {
        self.inner.exp_add(i, j)
    }

    fn exp_neg(&self, i: &R::Exp) -> R::Exp {
        self.inner.exp_neg(i)
    }

    fn exp_mul(&self, i: &R::Exp, j: &R::Exp) -> Result<R::Exp> {
        self.inner.exp_mul(i, j)
    }

    fn exp_signum(&self, i: &R::Exp) -> i8 {
        self.inner.exp_signum(i)
    }

    fn exp_embed(&self, i: &R::Exp) -> R::Elem {
        self.inner.exp_embed(i)
    }

    fn k_pow(&self, i: &R::Exp) -> Result<R::Elem> {
        self.inner.k_pow(if *i == self.from { &self.to } else { i })
    }

    fn div_up_to_k(&self, a: &R::Elem, b: &R::Elem) -> Option<(R::Elem, u32)> {
        self.inner.div_up_to_k(a, b)
    }

    fn normalize_frac(&self, num: R::Elem, den: &R::Exp) -> (R::Elem, R::Exp) {
        self.inner.normalize_frac(num, den)
    }
}

/// `g`, `h` and exponents `α`, `β` for one round of the MR-axioms.
#[derive(Clone, Debug)]
pub struct MrSample<R: ExpRing> {
    pub g: Element<Frac<R>>,
    pub h: Element<Frac<R>>,
    pub alpha: R::Exp,
    pub beta: R::Exp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MrReport {
    pub ring: String,
    pub samples: usize,
    pub checked: usize,
    /// Axiom instances with an undefined power.
    pub skipped: usize,
    /// Axiom (4) instances not asserted because `g`, `h` do not commute.
    pub non_commuting: usize,
    pub violations: Vec<String>,
}

/// Axioms (1)–(4) of an `E`-group on each sample:
/// `g¹ = g`, `g⁰ = e`, `g^{α+β} = g^α g^β`; `g^{αβ} = (g^α)^β`;
/// `(h⁻¹gh)^α = h⁻¹g^αh`; `[g,h] = e ⟹ (gh)^α = g^α h^α`.
pub fn mr_axiom_suite<R: ExpRing>(group: &NonstdGroup<R>, samples: &[MrSample<R>]) -> MrReport {
    let ring = group.ring().base();
    let mut report = MrReport {
        ring: ring.name(),
        samples: samples.len(),
        checked: 0,
        skipped: 0,
        non_commuting: 0,
        violations: Vec::new(),
    };
    let pw = |x: &Element<Frac<R>>, n: &R::Exp| group.try_pow(x, n);
    for s in samples {
        let (g, h, a, b) = (&s.g, &s.h, &s.alpha, &s.beta);
        let one = ring.exp_from_int(1);
        let zero = ring.exp_from_int(0);
        let mut axioms: Vec<(String, Result<bool>)> = vec![
            ("g^1 = g".into(), pw(g, &one).map(|p| p == *g)),
            ("g^0 = e".into(), pw(g, &zero).map(|p| group.is_identity(&p))),
            (
                format!("g^({a}+{b}) = g^{a} g^{b}"),
                (|| Ok(pw(g, &ring.exp_add(a, b))? == group.mul(&pw(g, a)?, &pw(g, b)?)))(),
            ),
            (
                format!("g^({a}·{b}) = (g^{a})^{b}"),
                (|| Ok(pw(g, &ring.exp_mul(a, b)?)? == pw(&pw(g, a)?, b)?))(),
            ),
            (
                format!("(h⁻¹gh)^{a} = h⁻¹g^{a}h"),
                (|| Ok(pw(&group.conj(g, h), a)? == group.conj(&pw(g, a)?, h)))(),
            ),
        ];
        if group.is_identity(&group.comm(g, h)) {
            axioms.push((
                format!("(gh)^{a} = g^{a} h^{a}"),
                (|| Ok(pw(&group.mul(g, h), a)? == group.mul(&pw(g, a)?, &pw(h, a)?)))(),
            ));
        } else {
            report.non_commuting += 1;
        }
        for (name, outcome) in axioms {
            match outcome {
                Err(_) => report.skipped += 1,
                Ok(holds) => {
                    report.checked += 1;
                    if !holds {
                        report.violations.push(format!("{name} at g = {g}, h = {h}"));
                    }
                }
            }
        }
    }
    report
}

/// Every third sample has `h` a power of `g`, every third has `g, h ∈ A`.
fn build_samples<R: ExpRing>(
    group: &NonstdGroup<R>,
    n: usize,
    rng: &mut ChaCha8Rng,
    mut element: impl FnMut(&mut ChaCha8Rng, bool) -> Element<Frac<R>>,
    mut exponent: impl FnMut(&mut ChaCha8Rng) -> R::Exp,
) -> Vec<MrSample<R>> {
    let ring = group.ring().base();
    (0..n)
        .map(|idx| {
            let (g, h) = match idx % 3 {
                0 => (element(rng, false), element(rng, false)),
                1 => {
                    let g = element(rng, false);
                    let j = ring.exp_from_int(rng.gen_range(-3..=3));
                    let h = group.try_pow(&g, &j).unwrap_or_else(|_| element(rng, false));
                    (g, h)
                }
                _ => (element(rng, true), element(rng, true)),
            };
            MrSample {
                g,
                h,
                alpha: exponent(rng),
                beta: exponent(rng),
            }
        })
        .collect()
}

/// `n` samples over ℤ: `|num| ≤ 1000`, `den ≤ 6`, `|m| ≤ 6`, `α, β ∈ [-6, 6]`.
pub fn mr_samples_standard(group: &NonstdGroup<IntRing>, n: usize, seed: u64) -> Vec<MrSample<IntRing>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = group.ring().clone();
    build_samples(
        group,
        n,
        &mut rng,
        |rng, in_a| {
            let y = f
                .make(BigInt::from(rng.gen_range(-1000..=1000)), &rng.gen_range(0..=6))
                .expect("den ≥ 0");
            GroupElement::new(y, if in_a { 0 } else { rng.gen_range(-6..=6) })
        },
        |rng| rng.gen_range(-6..=6),
    )
}

fn random_symexp(rng: &mut ChaCha8Rng) -> SymExp {
    (0..rng.gen_range(1..=3)).fold(SymExp::zero(), |acc, _| {
        let t = SymExp::monomial(rng.gen_range(-5..=5), rng.gen_range(-1..=1), rng.gen_range(0..=1));
        &acc + &t
    })
}

/// `n` samples with symbolic coordinates: numerators with up to three terms,
/// `m = aω + b` for `|a| ≤ 1`, `|b| ≤ 2`, and standard `α, β ∈ [-2, 2]`.
pub fn mr_samples_symbolic(group: &NonstdGroup<SymRing>, n: usize, seed: u64) -> Vec<MrSample<SymRing>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = group.ring().clone();
    build_samples(
        group,
        n,
        &mut rng,
        |rng, in_a| {
            let y = f
                .make(random_symexp(rng), &SymExpo::int(rng.gen_range(0..=2)))
                .expect("den ≥ 0");
            let m = if in_a {
                SymExpo::int(0)
            } else {
                SymExpo::new(rng.gen_range(-1..=1), rng.gen_range(-2..=2))
            };
            GroupElement::new(y, m)
        },
        |rng| SymExpo::int(rng.gen_range(-2..=2)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub k: u64,
    pub elements: usize,
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Compares the standard instance over `Frac<IntRing>` with [`BsGroup`] on
/// the box: bijection, products, inverses, conjugates, commutators, and
/// powers `|n| ≤ pow_range`.
pub fn standard_table_check(k: u64, bx: &GroupBox, pow_range: i64) -> Result<TableReport> {
    let core = BsGroup::new(k as i64)?;
    let ns: NonstdGroup<IntRing> = SemiDirect::over(Frac::new(IntRing::new(k as i64)?));
    let f = ns.ring();
    let elements = bx.elements(&core);
    let mut report = TableReport {
        k,
        elements: elements.len(),
        checked: 0,
        violations: Vec::new(),
    };
    let phi = |x: &BsElement| {
        GroupElement::new(
            FracElement {
                num: x.y.num().clone(),
                den: x.y.e() as i64,
            },
            x.m,
        )
    };
    let mut check = |ok: bool, what: &dyn Fn() -> String| {
        report.checked += 1;
        if !ok {
            report.violations.push(what());
        }
    };
    let images: Vec<_> = elements.iter().map(phi).collect();
    let distinct: HashSet<_> = images.iter().collect();
    check(distinct.len() == elements.len(), &|| "the map is not injective".into());
    for (x, fx) in elements.iter().zip(&images) {
        let canonical = f.make(fx.y.num.clone(), &fx.y.den).map(|y| y == fx.y).unwrap_or(false);
        check(canonical, &|| format!("φ({x}) is not canonical"));
        let back = core.element(core.context().normalize(fx.y.num.clone(), fx.y.den), fx.m);
        check(back == *x, &|| format!("ψ(φ({x})) ≠ {x}"));
        check(phi(&core.inv(x)) == ns.inv(fx), &|| format!("inverse of {x}"));
        for n in -pow_range..=pow_range {
            let ok = ns.try_pow(fx, &n).is_ok_and(|p| p == phi(&core.pow(x, n)));
            check(ok, &|| format!("{x}^{n}"));
        }
    }
    for (x, fx) in elements.iter().zip(&images) {
        for (y, fy) in elements.iter().zip(&images) {
            check(phi(&core.mul(x, y)) == ns.mul(fx, fy), &|| format!("{x}·{y}"));
            check(phi(&core.conj(x, y)) == ns.conj(fx, fy), &|| format!("{y}⁻¹{x}{y}"));
            check(phi(&core.comm(x, y)) == ns.comm(fx, fy), &|| format!("[{x}, {y}]"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symbolic_exps() -> Vec<SymExpo> {
        vec![
            SymExpo::int(0),
            SymExpo::int(1),
            SymExpo::omega(),
            SymExpo::new(1, 1),
            SymExpo::new(2, 0),
            SymExpo::new(-1, 0),
        ]
    }

    #[test]
    fn laws_hold_on_both_instances() {
        let f = Frac::new(IntRing::new(2).unwrap());
        let exps: Vec<i64> = (-5..=5).collect();
        let r = expring_laws_suite(&f, &exps);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.skipped, 0);

        let s = SymRing::new(2).unwrap();
        let r = expring_laws_suite(&s, &symbolic_exps());
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.checked > 0);
    }

    #[test]
    fn collapsing_k_omega_is_caught() {
        let m = MutatedExpRing {
            inner: SymRing::new(2).unwrap(),
            from: SymExpo::new(1, 1),
            to: SymExpo::omega(),
        };
        let r = expring_laws_suite(&m, &symbolic_exps());
        assert!(r.violations.iter().any(|v| v.contains("with")), "{:?}", r.violations);
    }

    #[test]
    fn standard_table_matches_core() {
        let bx = GroupBox::new(2, 1, 2).with_i_range(-1, 1);
        let r = standard_table_check(3, &bx, 3).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn mr_axioms_on_samples() {
        let ns: NonstdGroup<IntRing> = SemiDirect::over(Frac::new(IntRing::new(2).unwrap()));
        let r = mr_axiom_suite(&ns, &mr_samples_standard(&ns, 60, 7));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.skipped, 0);
        assert!(r.non_commuting < 60);

        let sym: NonstdGroup<SymRing> = SemiDirect::over(Frac::new(SymRing::new(2).unwrap()));
        let r = mr_axiom_suite(&sym, &mr_samples_symbolic(&sym, 60, 7));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.checked > r.skipped);
    }
}
