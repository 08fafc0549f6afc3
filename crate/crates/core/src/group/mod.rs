//! The metabelian Baumslag–Solitar group as a semidirect product `R ⋊ E`.
//!
//! Elements are pairs `(y, m)` with product `(y₁ + y₂·k^{-m₁}, m₁ + m₂)`. The
//! formulas are written once over [`CoefficientRing`]; [`BsGroup`] is the
//! standard instance ℤ[1/k] ⋊ ℤ, and [`crate::nonstd`] supplies instances over
//! rings of fractions of other exponential rings.

mod standard;
mod word;

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use standard::{BsElement, BsGroup, Membership};
pub use word::GroupWord;

/// What the semidirect product needs from its coefficients.
///
/// `Scalar` is the additive module (ℤ[1/k] or a ring of fractions) and
/// `Exponent` the acting group (ℤ or an exponent subgroup `E`).
pub trait CoefficientRing: Clone {
    type Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display;
    type Exponent: Clone + Eq + Hash + fmt::Debug + fmt::Display;

    fn k(&self) -> u64;

    fn zero(&self) -> Self::Scalar;
    fn add(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn neg(&self, a: &Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    /// Exact quotient `a / b`, if it exists in the coefficient ring.
    fn div(&self, a: &Self::Scalar, b: &Self::Scalar) -> Option<Self::Scalar>;
    /// `k^i` as a coefficient.
    fn k_pow(&self, i: &Self::Exponent) -> Self::Scalar;
    /// The exponent `n` viewed as a coefficient.
    fn embed(&self, n: &Self::Exponent) -> Self::Scalar;

    fn exp_zero(&self) -> Self::Exponent;
    fn exp_add(&self, a: &Self::Exponent, b: &Self::Exponent) -> Self::Exponent;
    fn exp_neg(&self, a: &Self::Exponent) -> Self::Exponent;
    /// Product of exponents; may leave the exponent group.
    fn exp_mul(&self, a: &Self::Exponent, b: &Self::Exponent) -> Result<Self::Exponent>;

    fn sub(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar {
        self.add(a, &self.neg(b))
    }

    fn one(&self) -> Self::Scalar {
        self.k_pow(&self.exp_zero())
    }
}

/// A pair `(y, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement<S, E> {
    pub y: S,
    pub m: E,
}

impl<S, E> GroupElement<S, E> {
    pub fn new(y: S, m: E) -> Self {
        GroupElement { y, m }
    }
}

impl<S: fmt::Display, E: fmt::Display> fmt::Display for GroupElement<S, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.y, self.m)
    }
}

pub type Element<C> =
    GroupElement<<C as CoefficientRing>::Scalar, <C as CoefficientRing>::Exponent>;

/// The group `R ⋊ E` over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiDirect<C> {
    ring: C,
}

impl<C: CoefficientRing> SemiDirect<C> {
    pub fn over(ring: C) -> Self {
        SemiDirect { ring }
    }

    pub fn ring(&self) -> &C {
        &self.ring
    }

    pub fn k(&self) -> u64 {
        self.ring.k()
    }

    pub fn identity(&self) -> Element<C> {
        GroupElement::new(self.ring.zero(), self.ring.exp_zero())
    }

    pub fn is_identity(&self, g: &Element<C>) -> bool {
        *g == self.identity()
    }

    /// `(y₁ + y₂·k^{-m₁}, m₁ + m₂)`.
    pub fn mul(&self, g1: &Element<C>, g2: &Element<C>) -> Element<C> {
        let r = &self.ring;
        let shifted = r.mul(&g2.y, &r.k_pow(&r.exp_neg(&g1.m)));
        GroupElement::new(r.add(&g1.y, &shifted), r.exp_add(&g1.m, &g2.m))
    }

    /// `(-y·k^m, -m)`.
    pub fn inv(&self, g: &Element<C>) -> Element<C> {
        let r = &self.ring;
        GroupElement::new(r.neg(&r.mul(&g.y, &r.k_pow(&g.m))), r.exp_neg(&g.m))
    }

    /// `g₂⁻¹g₁g₂ = ((y₁ - y₂)k^{m₂} + y₂k^{m₂-m₁}, m₁)`.
    pub fn conj(&self, g1: &Element<C>, g2: &Element<C>) -> Element<C> {
        let r = &self.ring;
        let first = r.mul(&r.sub(&g1.y, &g2.y), &r.k_pow(&g2.m));
        let second = r.mul(&g2.y, &r.k_pow(&r.exp_add(&g2.m, &r.exp_neg(&g1.m))));
        GroupElement::new(r.add(&first, &second), g1.m.clone())
    }

    /// `[g₁, g₂] = g₁⁻¹g₂⁻¹g₁g₂ = (-y₁k^{m₁} + y₂k^{m₂} + (y₁ - y₂)k^{m₁+m₂}, 0)`.
    pub fn comm(&self, g1: &Element<C>, g2: &Element<C>) -> Element<C> {
        let r = &self.ring;
        let a = r.neg(&r.mul(&g1.y, &r.k_pow(&g1.m)));
        let b = r.mul(&g2.y, &r.k_pow(&g2.m));
        let c = r.mul(&r.sub(&g1.y, &g2.y), &r.k_pow(&r.exp_add(&g1.m, &g2.m)));
        GroupElement::new(r.add(&r.add(&a, &b), &c), r.exp_zero())
    }

    pub fn conj_longhand(&self, g1: &Element<C>, g2: &Element<C>) -> Element<C> {
        self.mul(&self.mul(&self.inv(g2), g1), g2)
    }

    pub fn comm_longhand(&self, g1: &Element<C>, g2: &Element<C>) -> Element<C> {
        let left = self.mul(&self.inv(g1), &self.inv(g2));
        self.mul(&self.mul(&left, g1), g2)
    }

    /// `gⁿ` by the closed form `(y(k^{-mn} - 1)/(k^{-m} - 1), mn)`, or `(n·y, 0)` when `m = 0`.
    pub fn try_pow(&self, g: &Element<C>, n: &C::Exponent) -> Result<Element<C>> {
        let r = &self.ring;
        let mn = r.exp_mul(&g.m, n)?;
        if g.m == r.exp_zero() {
            return Ok(GroupElement::new(r.mul(&r.embed(n), &g.y), mn));
        }
        let numerator = r.mul(&g.y, &r.sub(&r.k_pow(&r.exp_neg(&mn)), &r.one()));
        let denominator = r.sub(&r.k_pow(&r.exp_neg(&g.m)), &r.one());
        let y = r.div(&numerator, &denominator).ok_or_else(|| {
            Error::PowerUndefined(format!("({}, {})^{}", g.y, g.m, n))
        })?;
        Ok(GroupElement::new(y, mn))
    }

    /// `gⁿ` for an integer `n` by square-and-multiply.
    pub fn pow_iter(&self, g: &Element<C>, n: i64) -> Element<C> {
        let mut base = if n < 0 { self.inv(g) } else { g.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn product<'a, I>(&self, factors: I) -> Element<C>
    where
        I: IntoIterator<Item = &'a Element<C>>,
        C: 'a,
    {
        factors
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }
}
