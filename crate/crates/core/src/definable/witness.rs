use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{check_arity, commute, in_a1, Name, WitnessOracle};
use crate::rings::int_divides;
use crate::error::{Error, Result};
use crate::fol::{Evaluator, GroupBox, GroupStructure, Verdict};
use crate::group::{BsElement, BsGroup};
use crate::rings::zk::strip_k_factors;
use crate::rings::{sn_witness, ZkRational};

/// Knobs for the witness checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessConfig {
    /// The values of `n` at which the `τ` checker builds `s_n`; `0` is skipped.
    pub n_range: Vec<i64>,
    /// Elements against which the matrix of a true universal is replayed.
    pub probes: Vec<BsElement>,
    /// Sample parameters `b₁ ∈ Ab` for the `π` checker.
    pub ab_samples: Vec<BsElement>,
    /// Flips the sign of the constructed `δ` witness; the harness must then disagree.
    pub mutate_delta: bool,
}

impl WitnessConfig {
    pub fn new(g: &BsGroup) -> Self {
        let ab_samples = vec![
            g.b(),
            g.mul(&g.a(), &g.b()),
            g.mul(&g.inv(&g.a()), &g.b()),
            g.elem(3, 1, 1),
        ];
        WitnessConfig {
            n_range: (-4..=4).filter(|n| *n != 0).collect(),
            probes: GroupBox::new(2, 1, 1).with_i_range(-1, 0).elements(g),
            ab_samples,
            mutate_delta: false,
        }
    }
}

/// The outcome of a witness check.
///
/// `verdict` carries the witnesses of the outermost block for positive
/// instances and the refuting instantiation for negative ones; qualified names
/// such as `alpha(x).y` point into a failing conjunct. `details` records the
/// exhibited elements and certificates in display form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub name: Name,
    pub args: Vec<BsElement>,
    pub verdict: Verdict<BsElement>,
    pub details: Vec<(String, String)>,
}

impl WitnessReport {
    fn new(name: Name, args: &[BsElement]) -> Self {
        WitnessReport {
            name,
            args: args.to_vec(),
            verdict: Verdict::Inconclusive,
            details: Vec::new(),
        }
    }

    fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.details.push((key.into(), value.to_string()));
    }

    fn holds(mut self, witness: Vec<(String, BsElement)>) -> Self {
        self.verdict = Verdict::ConclusiveTrue(witness);
        self
    }

    fn fails(mut self, counterexample: Vec<(String, BsElement)>, certificate: impl ToString) -> Self {
        self.note("counterexample", certificate);
        self.verdict = Verdict::ConclusiveFalse(counterexample);
        self
    }

    fn unknown(mut self, why: impl ToString) -> Self {
        self.note("inconclusive", why);
        self.verdict = Verdict::Inconclusive;
        self
    }

    /// The explicit counterexample recorded for a negative verdict, if any.
    pub fn counterexample(&self) -> Option<&str> {
        self.details
            .iter()
            .find(|(k, _)| k == "counterexample")
            .map(|(_, v)| v.as_str())
    }

    /// Imports a failing sub-check as the reason for this one.
    fn fails_by(self, label: &str, sub: WitnessReport) -> Self {
        let cx = sub
            .verdict
            .assignment()
            .iter()
            .map(|(v, e)| (format!("{label}.{v}"), e.clone()))
            .collect();
        let cert = format!("{label} fails: {}", sub.counterexample().unwrap_or("?"));
        self.fails(cx, cert)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            name: &'a str,
            args: Vec<String>,
            verdict: String,
            assignment: Vec<(String, String)>,
            details: &'a [(String, String)],
        }
        let verdict = match self.verdict.truth() {
            Some(true) => "ConclusiveTrue",
            Some(false) => "ConclusiveFalse",
            None => "Inconclusive",
        };
        serde_json::to_value(Out {
            name: self.name.as_str(),
            args: self.args.iter().map(ToString::to_string).collect(),
            verdict: verdict.into(),
            assignment: self
                .verdict
                .assignment()
                .iter()
                .map(|(v, e)| (v.clone(), e.to_string()))
                .collect(),
            details: &self.details,
        })
        .expect("plain data serializes")
    }
}

/// Replays the constructive content of the proof for `name` at `args`.
///
/// Positive instances construct the proof's witnesses and check the matrix
/// exactly; negative instances evaluate the proof's counterexample and attach
/// an exact certificate that no other choice works. `gamma` and `theta_bs` are
/// evaluated structurally by the bounded evaluator, with predicate atoms
/// decided by the semantic oracle (`gamma`) or by these checkers (`theta_bs`).
pub fn witness_check(
    g: &BsGroup,
    name: Name,
    args: &[BsElement],
    cfg: &WitnessConfig,
) -> Result<WitnessReport> {
    check_arity(name, args)?;
    match name {
        Name::Alpha => Ok(check_alpha(g, &args[0], cfg)),
        Name::Beta => Ok(check_beta(g, &args[0], cfg)),
        Name::Delta => check_delta(g, &args[0], &args[1], cfg),
        Name::Tau => check_tau(g, args, cfg),
        Name::Pi => check_pi(g, &args[0], cfg),
        Name::Pronic => Ok(check_pronic(g, args)),
        Name::Gamma | Name::ThetaBs => {
            let oracle = Arc::new(WitnessOracle::new(g.clone(), cfg.clone()));
            structural(name, args, GroupStructure::with_domain(g.clone(), cfg.probes.clone()).with_oracle(oracle))
        }
        Name::ThetaZ => Err(Error::LanguageMismatch("theta_z is a ring-language formula".into())),
    }
}

fn structural(name: Name, args: &[BsElement], s: GroupStructure) -> Result<WitnessReport> {
    let f = super::NamedFormula::new(name, s.group().k())?;
    let defs = super::definitions(s.group().k())?;
    let env: Vec<(String, BsElement)> = f.params.iter().cloned().zip(args.iter().cloned()).collect();
    let verdict = Evaluator::new(&s)
        .with_definitions(&defs)
        .with_max_steps(20_000)
        .evaluate(&f.ast, &env)?;
    let mut report = WitnessReport::new(name, args);
    report.note("method", "bounded evaluation of the formula with predicate oracles");
    Ok(match verdict {
        Verdict::ConclusiveTrue(w) => report.holds(w),
        Verdict::ConclusiveFalse(cx) => {
            let cert = if cx.is_empty() {
                "a quantifier-free conjunct fails".to_string()
            } else {
                "the evaluator refuted an instance".to_string()
            };
            report.fails(cx, cert)
        }
        Verdict::Inconclusive => report.unknown("bounded evaluation was inconclusive"),
    })
}

fn check_alpha(g: &BsGroup, x: &BsElement, cfg: &WitnessConfig) -> WitnessReport {
    let report = WitnessReport::new(Name::Alpha, std::slice::from_ref(x));
    if x.m == 0 {
        for y in &cfg.probes {
            let g1 = g.comm(&g.conj(x, y), x);
            if !g.is_identity(&g1) {
                return report.unknown(format!("claim violated at y = {y}: {g1}"));
            }
        }
        let mut report = report.holds(vec![]);
        report.note("reason", "x ∈ A; conjugates of x stay in the abelian normal subgroup A");
        return report;
    }
    let a = g.a();
    let h = g.conj(x, &a);
    let g1 = g.comm(&h, x);
    let ctx = g.context();
    let km1 = ctx.k_pow_minus_one(x.m);
    let expected = BsElement::new(-(&km1 * &km1), 0);
    if g1 != expected || g.is_identity(&g1) {
        return report.unknown(format!("claim violated: [a⁻¹xa, x] = {g1}, expected {expected}"));
    }
    let mut report = report.fails(
        vec![("y".into(), a)],
        format!("y = a gives [y⁻¹xy, x] = {g1} = (-(k^m-1)^2, 0) ≠ e"),
    );
    report.note("g", &g1);
    report
}

fn check_beta(g: &BsGroup, y: &BsElement, cfg: &WitnessConfig) -> WitnessReport {
    let report = WitnessReport::new(Name::Beta, std::slice::from_ref(y));
    let k = g.k() as i64;
    if y.m == 1 {
        for x in cfg.probes.iter().filter(|x| x.m == 0) {
            if g.conj(x, y) != g.pow(x, k) {
                return report.unknown(format!("claim violated at x = {x}"));
            }
        }
        let mut report = report.holds(vec![]);
        report.note("reason", "y = (x, 1) conjugates (z, 0) to (zk, 0) = (z, 0)^k");
        return report;
    }
    let a = g.a();
    let conj = g.conj(&a, y);
    let expected = BsElement::new(g.context().k_pow(y.m), 0);
    if conj != expected || conj == g.pow(&a, k) {
        return report.unknown(format!("claim violated: y⁻¹ay = {conj}"));
    }
    let mut report = report.fails(
        vec![("x".into(), a)],
        format!("x = a gives y⁻¹xy = {conj} = (k^m, 0) ≠ a^k"),
    );
    report.note("g", &conj);
    report
}

fn check_delta(g: &BsGroup, x: &BsElement, y: &BsElement, cfg: &WitnessConfig) -> Result<WitnessReport> {
    let report = WitnessReport::new(Name::Delta, &[x.clone(), y.clone()]);
    let ctx = g.context();
    let (dx, dy) = (ctx.k_pow_minus_one(x.m), ctx.k_pow_minus_one(y.m));
    let t = if y.m == 0 {
        (x.m == 0).then(|| ctx.zero())
    } else {
        dy.divides(&dx)?
    };
    if let Some(t) = t {
        let t = if cfg.mutate_delta { -&t } else { t };
        if &t * &dy != dx {
            return Ok(report.unknown("claim violated: t(k^n - 1) ≠ k^m - 1"));
        }
        let mut probes: Vec<BsElement> = cfg.probes.iter().filter(|c| c.m == 0).cloned().collect();
        probes.extend([g.a(), g.inv(&g.a())]);
        for c in &probes {
            let u = g.a_power(c, &t);
            if u.m != 0 || g.comm(x, c) != g.comm(y, &u) {
                return Ok(report.unknown(format!("constructed witness u = c^t fails at c = {c}")));
            }
        }
        let mut report = report.holds(vec![]);
        report.note("t", &t);
        report.note("u", "c^t");
        return Ok(report);
    }
    let c = g.inv(&g.a());
    let lhs = g.comm(x, &c);
    let certificate = if y.m == 0 {
        format!("[x, c] = {lhs} ≠ e while [y, u] = e for every u")
    } else {
        format!("[x, c] = {lhs} = [y, a^s] needs s = (k^m - 1)/(1 - k^n), which is not in ℤ[1/k]")
    };
    Ok(report.fails(vec![("c".into(), c)], certificate))
}

fn check_pronic(g: &BsGroup, args: &[BsElement]) -> WitnessReport {
    let (x, w, t) = (&args[0], &args[1], &args[2]);
    let report = WitnessReport::new(Name::Pronic, args);
    if t.m != 1 {
        return report.unknown("t ∉ Ab");
    }
    for (label, u) in [("x", x), ("w", w)] {
        if !commute(g, u, t) {
            return report.fails(vec![], format!("[{label}, t] ≠ e"));
        }
    }
    let n = i128::from(x.m);
    let mw = i128::from(w.m);
    if n == 0 || n == -1 {
        return if mw == 0 {
            report.holds(vec![])
        } else {
            report.fails(vec![], "x ∈ {e, t⁻¹} forces w = e")
        };
    }
    let p = n * (n + 1);
    let divides = |d: i128, m: i128| if d == 0 { m == 0 } else { m % d == 0 };
    if mw == p {
        // Replays the universal over v = t^j on a window of multiples.
        for j in -2 * p..=2 * p {
            if divides(p, j) != (divides(n, j) && divides(n + 1, j)) {
                return report.unknown(format!("claim violated at v = t^{j}"));
            }
        }
        if !divides(2 * n + 1, 2 * p - n) {
            return report.unknown("claim violated: 2n+1 ∤ 2n(n+1) - n");
        }
        let mut report = report.holds(vec![]);
        report.note("w", format!("t^{p}"));
        return report;
    }
    if mw == -p {
        return report.fails(
            vec![],
            format!("delta(w*w*inv(x), x*x*t) fails: {} ∤ {}", 2 * n + 1, 2 * mw - n),
        );
    }
    let to_i64 = |v: i128| i64::try_from(v).expect("exponents of box elements");
    let v = if mw == 0 || !divides(mw, p) {
        g.pow(t, to_i64(p))
    } else {
        w.clone()
    };
    let cert = format!(
        "v = {v}: delta(v, w) and delta(v, x) & delta(v, x*t) disagree ({}, {})",
        int_divides(w.m, v.m),
        int_divides(x.m, v.m) && int_divides(x.m + 1, v.m)
    );
    report.fails(vec![("v".into(), v)], cert)
}

fn check_tau(g: &BsGroup, args: &[BsElement], cfg: &WitnessConfig) -> Result<WitnessReport> {
    let (x, y, h, b1) = (&args[0], &args[1], &args[2], &args[3]);
    let report = WitnessReport::new(Name::Tau, args);
    for (label, arg) in [("alpha(x)", x), ("alpha(y)", y)] {
        let sub = check_alpha(g, arg, cfg);
        if sub.verdict.is_false() {
            return Ok(report.fails_by(label, sub));
        }
    }
    if !commute(g, h, b1) {
        let c = g.comm(h, b1);
        return Ok(report.fails(vec![], format!("[h, b1] = {c} ≠ e")));
    }
    let sub = check_beta(g, b1, cfg);
    if sub.verdict.is_false() {
        return Ok(report.fails_by("beta(b1)", sub));
    }
    let (l, t, z) = (&x.y, &y.y, h.m);
    let mut report = report;
    for &n in cfg.n_range.iter().filter(|n| **n != 0) {
        let nz = n
            .checked_mul(z)
            .ok_or_else(|| Error::OutOfRange(format!("n·z = {n}·{z}")))?;
        let (v, w) = (g.pow(b1, n), g.pow(b1, nz));
        match sn_witness(l, z, t, n)? {
            Some(s) => {
                let u = BsElement::new(-&s, 0);
                let lhs = g.comm(&v, y);
                let rhs = g.mul(&g.comm(&w, x), &g.comm(&v, &g.comm(&u, &v)));
                if lhs != rhs {
                    return Ok(report.unknown(format!("claim violated at n = {n}: u = a^(-s_n) fails")));
                }
                report.note(format!("s_{n}"), &s);
            }
            None => {
                let cert = format!(
                    "n = {n}: (k^n - 1)^2 does not divide l(k^(nz) - 1) - t(k^n - 1) in ℤ[1/k], \
                     so no u ∈ A satisfies [v, y] = [w, x][v, [u, v]]"
                );
                return Ok(report.fails(vec![("v".into(), v), ("w".into(), w)], cert));
            }
        }
    }
    if l.mul_int(&BigInt::from(z)) == *t {
        report.note("u", "a^(-s_n) for v = b1^n, w = b1^(nz)");
        Ok(report.holds(vec![]))
    } else {
        Ok(report.unknown("every n in the window admits s_n although l·z ≠ t; widen n_range"))
    }
}

fn check_pi(g: &BsGroup, x: &BsElement, cfg: &WitnessConfig) -> Result<WitnessReport> {
    let report = WitnessReport::new(Name::Pi, std::slice::from_ref(x));
    let (a, b) = (g.a(), g.b());
    if x.m != 0 {
        let sub = check_alpha(g, x, cfg);
        let mut report = report.fails(
            vec![("c".into(), a), ("v".into(), b)],
            format!(
                "alpha(x) fails (y = a gives {}), so tau(x, ·, ·, v) is false for every w, h",
                sub.details.iter().find(|(k, _)| k == "g").map_or("?", |(_, v)| v.as_str())
            ),
        );
        report.details.extend(sub.details.into_iter().map(|(k, v)| (format!("alpha(x).{k}"), v)));
        return Ok(report);
    }
    let l = &x.y;
    if !in_a1(x) {
        let residual = if l.is_zero() {
            BigInt::zero()
        } else {
            strip_k_factors(l.num(), g.k())
        };
        debug_assert!(residual.is_zero() || !residual.abs().is_one());
        let cert = format!(
            "with c = a, v = b every w ∈ C(b) is b^i and tau(x, a^(k^i), h, b) needs l·z = k^i; \
             the part {residual} of l coprime to k rules this out"
        );
        let mut report = report.fails(vec![("c".into(), a), ("v".into(), b)], cert);
        report.note("residual", residual);
        return Ok(report);
    }
    let mut cs: Vec<BsElement> = cfg.probes.iter().filter(|c| c.m == 0).cloned().collect();
    cs.extend([a.clone(), g.inv(&a)]);
    cs.dedup();
    let mut report = report;
    for v in &cfg.ab_samples {
        for c in &cs {
            let (w, h) = match pi_witness(g, l, c, v)? {
                Some(pair) => pair,
                None => return Ok(report.unknown(format!("no construction for c = {c}, v = {v}"))),
            };
            let tau = check_tau(g, &[x.clone(), g.conj(c, &w), h.clone(), v.clone()], cfg)?;
            if !commute(g, &w, v) || !tau.verdict.is_true() {
                return Ok(report.unknown(format!("constructed w = {w}, h = {h} fails at c = {c}, v = {v}")));
            }
        }
    }
    report.note("construction", "t/l = z·k^(-i) gives w = v^i, h = v^z");
    Ok(report.holds(vec![]))
}

/// For `c = a^t` and `v ∈ Ab`, the pair `w = v^i`, `h = v^z` with `l·z = t·kⁱ`.
fn pi_witness(
    g: &BsGroup,
    l: &ZkRational,
    c: &BsElement,
    v: &BsElement,
) -> Result<Option<(BsElement, BsElement)>> {
    let Some(q) = l.divides(&c.y)? else {
        return Ok(None);
    };
    let (Some(z), Ok(i)) = (q.num().to_i64(), i64::try_from(q.e())) else {
        return Err(Error::OutOfRange(format!("t/l = {q}")));
    };
    Ok(Some((g.pow(v, i), g.pow(v, z))))
}
