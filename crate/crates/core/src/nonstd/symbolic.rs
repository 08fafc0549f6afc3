//! A symbolic exponential ring with one infinite element `ω`.
//!
//! Elements are finite sums `Σ c_{a,j}·ωʲ·k^{aω}` with integer `c`, that is
//! the ring `ℤ[ω, t, t⁻¹]` with `t = k^ω`. It is ordered by the leading term
//! for the lexicographic order on `(a, j)`: `k^{aω}` beats every polynomial in
//! `ω`, and `ω` beats every integer. Exponents live in `E = ℤω + ℤ`.
//!
//! This ring is not elementarily equivalent to ℤ (`ω` has no parity here). It
//! exists to run every formula of the construction on infinite elements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExpRing;
use crate::error::{Error, Result};
use crate::rings::{RingContext, ZkRational};

/// `Σ c·ωʲ·k^{aω}`, keyed by `(a, j)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymExp {
    terms: BTreeMap<(i64, u32), BigInt>,
}

impl SymExp {
    pub fn zero() -> Self {
        SymExp::default()
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Self::monomial(n, 0, 0)
    }

    /// `ω`.
    pub fn omega() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c·ωʲ·k^{aω}`.
    pub fn monomial(c: impl Into<BigInt>, a: i64, j: u32) -> Self {
        let mut out = SymExp::zero();
        out.add_term((a, j), c.into());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficients `((a, j), c)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (i64, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Sign of the leading term.
    pub fn signum(&self) -> i8 {
        match self.terms.last_key_value() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Multiplies by `t^s = k^{sω}`.
    pub fn shift(&self, s: i64) -> SymExp {
        SymExp {
            terms: self.terms.iter().map(|(&(a, j), c)| ((a + s, j), c.clone())).collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> SymExp {
        let mut out = SymExp::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, c * n);
        }
        out
    }

    fn content_divisible_by(&self, n: &BigInt) -> bool {
        self.terms.values().all(|c| c.is_multiple_of(n))
    }

    /// Exact quotient `self / other` with coefficients in ℤ[1/k], returned as
    /// `(q, d)` with `other·q = self·k^d`. Long division on the leading
    /// term, confirmed by multiplying back.
    pub fn div_up_to_k(&self, other: &SymExp, k: u64) -> Option<(SymExp, u32)> {
        let (&lead, lead_c) = other.terms.last_key_value()?;
        if self.is_zero() {
            return Some((SymExp::zero(), 0));
        }
        let ctx = RingContext::new(k as i64).expect("k ≥ 2");
        let lead_c = ctx.int(lead_c.clone());
        let min_a = |p: &SymExp| p.terms.keys().map(|(a, _)| *a).min().expect("nonzero");
        let floor = min_a(self) - min_a(other);
        let mut rem: BTreeMap<(i64, u32), ZkRational> =
            self.terms.iter().map(|(&key, c)| (key, ctx.int(c.clone()))).collect();
        let mut quotient: Vec<((i64, u32), ZkRational)> = Vec::new();
        while let Some((&(ar, jr), c)) = rem.last_key_value() {
            if jr < lead.1 || ar - lead.0 < floor || quotient.len() > 10_000 {
                return None;
            }
            let q = lead_c.divides(c).ok().flatten()?;
            let key = (ar - lead.0, jr - lead.1);
            for (&(a, j), d) in &other.terms {
                let slot = rem.entry((key.0 + a, key.1 + j)).or_insert_with(|| ctx.zero());
                *slot = &*slot - &q.mul_int(d);
                if slot.is_zero() {
                    rem.remove(&(key.0 + a, key.1 + j));
                }
            }
            quotient.push((key, q));
        }
        let d = quotient.iter().map(|(_, q)| q.e()).max().unwrap_or(0);
        let mut q_int = SymExp::zero();
        for (key, q) in quotient {
            q_int.add_term(key, q.shift(d as i64).to_integer().expect("denominators cleared"));
        }
        let d = u32::try_from(d).ok()?;
        let scale = BigInt::from(k).pow(d);
        (&q_int * other == self.scale(&scale)).then_some((q_int, d))
    }
}

impl std::ops::Add for &SymExp {
    type Output = SymExp;

    fn add(self, other: &SymExp) -> SymExp {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.add_term(key, c.clone());
        }
        out
    }
}

impl std::ops::Neg for &SymExp {
    type Output = SymExp;

    fn neg(self) -> SymExp {
        SymExp {
            terms: self.terms.iter().map(|(&key, c)| (key, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &SymExp {
    type Output = SymExp;

    fn mul(self, other: &SymExp) -> SymExp {
        let mut out = SymExp::zero();
        for (&(a1, j1), c1) in &self.terms {
            for (&(a2, j2), c2) in &other.terms {
                out.add_term((a1 + a2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

/// Renders `(c_a(w))*K^(a*w)` per `a`, polynomials dense from the top degree.
impl fmt::Display for SymExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut by_a: BTreeMap<i64, BTreeMap<u32, &BigInt>> = BTreeMap::new();
        for (&(a, j), c) in &self.terms {
            by_a.entry(a).or_default().insert(j, c);
        }
        let zero = BigInt::zero();
        let parts: Vec<String> = by_a
            .iter()
            .map(|(a, poly)| {
                let top = *poly.keys().next_back().expect("nonempty");
                let coeffs: Vec<String> = (0..=top)
                    .rev()
                    .map(|j| {
                        let c = poly.get(&j).copied().unwrap_or(&zero);
                        match j {
                            0 => format!("{c}"),
                            1 => format!("{c}*w"),
                            _ => format!("{c}*w^{j}"),
                        }
                    })
                    .collect();
                format!("({})*K^({a}*w)", coeffs.join(" + "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Syntax { pos: 0, msg: msg.into() }
}

/// Splits on `" + "` outside parentheses.
fn split_top(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && src[i..].starts_with(" + ") => {
                out.push(&src[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(&src[start..]);
    out
}

impl FromStr for SymExp {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let src = src.trim();
        let mut out = SymExp::zero();
        if src == "0" {
            return Ok(out);
        }
        for term in split_top(src) {
            let (poly, a) = term
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix("*w)"))
                .and_then(|t| t.split_once(")*K^("))
                .ok_or_else(|| bad(format!("expected (c(w))*K^(a*w), found `{term}`")))?;
            let a: i64 = a.parse().map_err(|_| bad(format!("bad exponent `{a}`")))?;
            for mono in poly.split(" + ") {
                let (c, j) = match mono.split_once("*w") {
                    None => (mono, 0),
                    Some((c, "")) => (c, 1),
                    Some((c, rest)) => {
                        let j = rest
                            .strip_prefix('^')
                            .and_then(|j| j.parse().ok())
                            .ok_or_else(|| bad(format!("bad monomial `{mono}`")))?;
                        (c, j)
                    }
                };
                let c: BigInt = c.parse().map_err(|_| bad(format!("bad coefficient `{c}`")))?;
                out.add_term((a, j), c);
            }
        }
        Ok(out)
    }
}

/// An exponent `a·ω + b ∈ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymExpo {
    pub a: i64,
    pub b: i64,
}

impl SymExpo {
    pub fn new(a: i64, b: i64) -> Self {
        SymExpo { a, b }
    }

    pub fn int(b: i64) -> Self {
        SymExpo { a: 0, b }
    }

    pub fn omega() -> Self {
        SymExpo { a: 1, b: 0 }
    }
}

impl fmt::Display for SymExpo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.a {
            0 => return write!(f, "{}", self.b),
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            a => format!("{a}*w"),
        };
        match self.b {
            0 => write!(f, "{w}"),
            b if b > 0 => write!(f, "{w}+{b}"),
            b => write!(f, "{w}{b}"),
        }
    }
}

/// The symbolic ring for a fixed `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymRing {
    k: u64,
}

impl SymRing {
    pub fn new(k: i64) -> Result<Self> {
        RingContext::new(k)?;
        Ok(SymRing { k: k as u64 })
    }
}

impl ExpRing for SymRing {
    type Elem = SymExp;
    type Exp = SymExpo;

    fn name(&self) -> String {
        format!("symbolic Z[w, K^w, K^-w] (k = {})", self.k)
    }

    fn k(&self) -> u64 {
        self.k
    }

    fn from_int(&self, n: i64) -> SymExp {
        SymExp::int(n)
    }

    fn add(&self, a: &SymExp, b: &SymExp) -> SymExp {
        a + b
    }

    fn neg(&self, a: &SymExp) -> SymExp {
        -a
    }

    fn mul(&self, a: &SymExp, b: &SymExp) -> SymExp {
        a * b
    }

    fn signum(&self, a: &SymExp) -> i8 {
        a.signum()
    }

    fn exp_from_int(&self, n: i64) -> SymExpo {
        SymExpo::int(n)
    }

    fn exp_as_int(&self, i: &SymExpo) -> Option<i64> {
        (i.a == 0).then_some(i.b)
    }

    fn exp_standard_part(&self, i: &SymExpo) -> i64 {
        i.b
    }

    fn exp_add(&self, i: &SymExpo, j: &SymExpo) -> SymExpo {
        SymExpo::new(i.a + j.a, i.b + j.b)
    }

    fn exp_neg(&self, i: &SymExpo) -> SymExpo {
        SymExpo::new(-i.a, -i.b)
    }

    fn exp_mul(&self, i: &SymExpo, j: &SymExpo) -> Result<SymExpo> {
        if i.a != 0 && j.a != 0 {
            return Err(Error::ExponentUndefined(format!("({i})·({j}) has an w² term")));
        }
        Ok(SymExpo::new(i.a * j.b + i.b * j.a, i.b * j.b))
    }

    fn exp_signum(&self, i: &SymExpo) -> i8 {
        (if i.a != 0 { i.a } else { i.b }).signum() as i8
    }

    fn exp_embed(&self, i: &SymExpo) -> SymExp {
        &SymExp::monomial(i.a, 0, 1) + &SymExp::int(i.b)
    }

    /// `k^{aω+b} = k^b·k^{aω}`, defined for `b ≥ 0`.
    fn k_pow(&self, i: &SymExpo) -> Result<SymExp> {
        if i.b < 0 {
            return Err(Error::ExponentUndefined(format!("k^({i}) is not in the ring")));
        }
        Ok(SymExp::monomial(BigInt::from(self.k).pow(i.b as u32), i.a, 0))
    }

    fn div_up_to_k(&self, a: &SymExp, b: &SymExp) -> Option<(SymExp, u32)> {
        a.div_up_to_k(b, self.k)
    }

    /// Folds `k^{-aω}` into the numerator, then cancels common factors `k`.
    fn normalize_frac(&self, num: SymExp, den: &SymExpo) -> (SymExp, SymExpo) {
        if num.is_zero() {
            return (num, SymExpo::int(0));
        }
        let mut num = num.shift(-den.a);
        let mut d = den.b;
        let k = BigInt::from(self.k);
        if d < 0 {
            num = num.scale(&k.pow((-d) as u32));
            d = 0;
        }
        while d > 0 && num.content_divisible_by(&k) {
            num = SymExp {
                terms: num.terms.into_iter().map(|(key, c)| (key, c / &k)).collect(),
            };
            d -= 1;
        }
        (num, SymExpo::int(d))
    }
}

impl SymExp {
    /// `1` when `self` is the constant one.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_k_omega_above_polynomials() {
        let t = SymExp::monomial(1, 1, 0);
        let big_poly = &SymExp::monomial(1000, 0, 5) + &SymExp::int(-7);
        assert_eq!((&t + &(-&big_poly)).signum(), 1);
        assert_eq!((&SymExp::omega() + &SymExp::int(-1_000_000)).signum(), 1);
        assert_eq!(SymExp::monomial(3, -1, 0).signum(), 1);
        assert_eq!((&SymExp::monomial(3, -1, 0) + &SymExp::int(-1)).signum(), -1);
    }

    #[test]
    fn rendering_round_trips() {
        let x = &(&SymExp::monomial(2, 1, 2) + &SymExp::monomial(-1, 1, 0)) + &SymExp::monomial(5, -1, 0);
        let s = x.to_string();
        assert_eq!(s, "(5)*K^(-1*w) + (2*w^2 + 0*w + -1)*K^(1*w)");
        assert_eq!(s.parse::<SymExp>().unwrap(), x);
        assert_eq!("0".parse::<SymExp>().unwrap(), SymExp::zero());
    }

    #[test]
    fn division_by_geometric_denominators() {
        // (t⁻² − 1)/(t⁻¹ − 1) = t⁻¹ + 1
        let num = &SymExp::monomial(1, -2, 0) + &SymExp::int(-1);
        let den = &SymExp::monomial(1, -1, 0) + &SymExp::int(-1);
        let (q, d) = num.div_up_to_k(&den, 2).unwrap();
        assert_eq!((q, d), (&SymExp::monomial(1, -1, 0) + &SymExp::int(1), 0));
        let a = &SymExp::monomial(1, -1, 0) + &SymExp::int(-1);
        let (q, d) = a.div_up_to_k(&SymExp::int(-1), 2).unwrap();
        assert_eq!((q, d), (&SymExp::monomial(-1, -1, 0) + &SymExp::int(1), 0));
        // dividing by 2 needs one factor k when k = 2, and fails when k = 3
        assert_eq!(a.div_up_to_k(&SymExp::int(2), 2), Some((a.clone(), 1)));
        assert_eq!(a.div_up_to_k(&SymExp::int(2), 3), None);
        assert_eq!(SymExp::int(1).div_up_to_k(&SymExp::omega(), 2), None);
    }

    #[test]
    fn normalization_cancels_k_omega() {
        let r = SymRing::new(2).unwrap();
        let (n, d) = r.normalize_frac(SymExp::monomial(1, 1, 0), &SymExpo::omega());
        assert!(n.is_one());
        assert_eq!(d, SymExpo::int(0));
        let (n, d) = r.normalize_frac(SymExp::int(6), &SymExpo::int(1));
        assert_eq!((n, d), (SymExp::int(3), SymExpo::int(0)));
    }
}
