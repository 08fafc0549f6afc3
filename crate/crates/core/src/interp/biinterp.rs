use num_bigint::BigInt;
use serde::Serialize;

use super::delta::theta_z_value;
use super::{code_delta, code_gamma, compose, mu_delta, theta_bs_check, theta_bs_image, theta_z_formula, Triple};
use crate::definable::{in_a1, WitnessConfig};
use crate::error::{Error, Result};
use crate::fol::{Evaluator, Formula, IntegerStructure};
use crate::group::{BsElement, BsGroup};

/// The box `|z| ≤ z_max`, `i ∈ [i_min, i_max]`, `|m| ≤ m_max` of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiinterpBox {
    pub z_max: i64,
    pub i_min: i64,
    pub i_max: i64,
    pub m_max: i64,
}

impl Default for BiinterpBox {
    fn default() -> Self {
        BiinterpBox {
            z_max: 3,
            i_min: -3,
            i_max: 3,
            m_max: 3,
        }
    }
}

impl BiinterpBox {
    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for z in -self.z_max..=self.z_max {
            for i in self.i_min..=self.i_max {
                for m in -self.m_max..=self.m_max {
                    out.push((z, i, m));
                }
            }
        }
        out
    }
}

/// Parameters `(a₁, b₁) ∈ A₁ × Ab` with a preimage `r̄` under `μ_Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPair {
    pub a1: BsElement,
    pub b1: BsElement,
    /// `(z_a, i_a, m_a, z_b, i_b, m_b)`.
    pub r: [i64; 6],
}

impl ParamPair {
    pub fn from_coords(g: &BsGroup, r: [i64; 6]) -> Result<Self> {
        let a1 = mu_delta(g, &Triple::new(r[0], r[1], r[2]));
        let b1 = mu_delta(g, &Triple::new(r[3], r[4], r[5]));
        if !in_a1(&a1) || b1.m != 1 {
            return Err(Error::Precondition(format!("{r:?} does not encode a pair in A₁ × Ab")));
        }
        Ok(ParamPair { a1, b1, r })
    }

    /// `(a, b)`, `(a, ab)`, `(a^k, ab)` and `(a⁻¹, a^{1/k}b)`.
    pub fn samples(g: &BsGroup) -> Vec<ParamPair> {
        [
            [1, 0, 0, 0, 0, 1],
            [1, 0, 0, 1, 0, 1],
            [1, 1, 0, 1, 0, 1],
            [-1, 0, 0, 1, -1, 1],
        ]
        .into_iter()
        .map(|r| Self::from_coords(g, r).expect("sample pairs are valid"))
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiinterpReport {
    pub k: u64,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl BiinterpReport {
    fn record(&mut self, check: &str, instance: String, expected: bool, got: Option<bool>) {
        self.checked += 1;
        if got != Some(expected) {
            self.violations.push(Violation {
                check: check.into(),
                instance,
                expected: expected.to_string(),
                got: got.map_or_else(|| "inconclusive".to_string(), |b| b.to_string()),
            });
        }
    }
}

fn ints(vals: &[(&str, i64)]) -> Vec<(String, BigInt)> {
    vals.iter().map(|(v, n)| (v.to_string(), BigInt::from(*n))).collect()
}

/// Checks the three graph claims of the bi-interpretation on the box.
///
/// 1. `θ_BS` holds exactly on `{(b₁^z, b₁ⁱ, b₁ᵐ, a₁^{zkⁱ}b₁ᵐ)}`; off-graph
///    candidates replace `x` by `x·a`, `x·b₁`, or `z̃` by `b₁^z·a`.
/// 2. `θ_ℤ` (formula and closed form) holds exactly on the graph of
///    `μ_Γ1∘μ_Δ`, with `b₁ᵐ` computed in the group.
/// 3. The translated `U_{Γ∘Δ}` agrees with `zkⁱ = z_b k^{i_b}(k^{−m}−1)/(k^{−1}−1)`
///    and with `[μ_Δ(z,i,m), b₁] = e`.
///
/// `mutate` flips the sign of `z_b` in `θ_ℤ`; the report must then be non-empty.
pub fn verify_biinterp(
    k: u64,
    bx: &BiinterpBox,
    pairs: &[ParamPair],
    mutate: bool,
    cfg: &WitnessConfig,
) -> Result<BiinterpReport> {
    let g = BsGroup::new(k as i64)?;
    let ctx = g.context();
    let mut report = BiinterpReport {
        k,
        checked: 0,
        violations: Vec::new(),
    };
    let triples = bx.triples();
    let ring = IntegerStructure::new(4);
    let theta = theta_z_formula(k, mutate)?;
    let u_code = compose(&code_gamma(k)?, &code_delta(k)?)?;
    let u_formula: &Formula = &u_code.domain.body;
    let u_var = &u_code.domain.vars[0];
    let geometric = ctx.k_pow_minus_one(-1);

    for pair in pairs {
        let (a1, b1) = (&pair.a1, &pair.b1);
        let off_b = g.mul(&g.pow(b1, 1), &g.a());
        let [za, ia, ma, zb, ib, mb] = pair.r;
        for &(z, i, m) in &triples {
            let (zt, it, mt) = (g.pow(b1, z), g.pow(b1, i), g.pow(b1, m));
            let x = theta_bs_image(&g, a1, b1, z, i, m);
            let zt_off = g.mul(&zt, &g.a());
            let cases = [
                (&zt, x.clone(), true),
                (&zt, g.mul(&x, &g.a()), false),
                (&zt, g.mul(&x, &off_b), false),
                (&zt_off, x.clone(), false),
            ];
            for (zt_c, x_c, expected) in cases {
                let v = theta_bs_check(&g, [zt_c, &it, &mt, &x_c], a1, b1, cfg)?;
                let expected = expected && x_c == x && zt_c == &zt;
                report.record(
                    "theta_bs",
                    format!("{zt_c}, {it}, {mt}, {x_c} | a1 = {a1}, b1 = {b1}"),
                    expected,
                    v.truth(),
                );
            }

            let on_u = g.pow(b1, m).y == ctx.normalize(z.into(), -i);
            for xv in [m, m + 1] {
                let expected = on_u && xv == m;
                let args = [z, i, m, xv];
                let closed = theta_z_value(k, args, pair.r, mutate)?;
                let env = ints(&[
                    ("zt", z), ("it", i), ("mt", m), ("x", xv),
                    ("za", za), ("ia", ia), ("ma", ma), ("zb", zb), ("ib", ib), ("mb", mb),
                ]);
                let formula = Evaluator::new(&ring).evaluate(&theta, &env)?.truth();
                let instance = format!("({z}, {i}, {m}, {xv}) | r = {:?}", pair.r);
                report.record("theta_z closed form", instance.clone(), expected, Some(closed));
                report.record("theta_z formula", instance, expected, formula);
            }

            let t = Triple::new(z, i, m);
            let commutes = g.is_identity(&g.comm(&mu_delta(&g, &t), b1));
            let quotient = geometric
                .divides(&ctx.k_pow_minus_one(-m))?
                .expect("k^{-1} - 1 divides k^{-m} - 1");
            let characterized =
                ctx.normalize(z.into(), -i) == &ctx.normalize(zb.into(), -ib) * &quotient;
            let mut env = t.bind(u_var);
            env.extend(Triple::new(zb, ib, mb).bind("pb"));
            env.extend(Triple::new(za, ia, ma).bind("pa"));
            let got = Evaluator::new(&ring).evaluate(u_formula, &env)?.truth();
            let instance = format!("{t} | r = {:?}", pair.r);
            report.record("U characterization", instance.clone(), commutes, Some(characterized));
            report.record("U formula", instance, commutes, got);
        }
    }
    Ok(report)
}
