use num_bigint::BigInt;

use super::{CoefficientRing, GroupElement, SemiDirect};
use crate::error::{Error, Result};
use crate::rings::{RingContext, ZkRational};

impl CoefficientRing for RingContext {
    type Scalar = ZkRational;
    type Exponent = i64;

    fn k(&self) -> u64 {
        RingContext::k(self)
    }

    fn zero(&self) -> ZkRational {
        RingContext::zero(self)
    }

    fn add(&self, a: &ZkRational, b: &ZkRational) -> ZkRational {
        a + b
    }

    fn neg(&self, a: &ZkRational) -> ZkRational {
        -a
    }

    fn mul(&self, a: &ZkRational, b: &ZkRational) -> ZkRational {
        a * b
    }

    fn div(&self, a: &ZkRational, b: &ZkRational) -> Option<ZkRational> {
        b.divides(a).ok().flatten()
    }

    fn k_pow(&self, i: &i64) -> ZkRational {
        RingContext::k_pow(self, *i)
    }

    fn embed(&self, n: &i64) -> ZkRational {
        self.int(*n)
    }

    fn exp_zero(&self) -> i64 {
        0
    }

    fn exp_add(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn exp_neg(&self, a: &i64) -> i64 {
        -a
    }

    fn exp_mul(&self, a: &i64, b: &i64) -> Result<i64> {
        a.checked_mul(*b)
            .ok_or_else(|| Error::OutOfRange(format!("{a}·{b} overflows")))
    }
}

/// An element `(y, m)` of ℤ[1/k] ⋊ ℤ.
pub type BsElement = GroupElement<ZkRational, i64>;

/// BS(1,k) realized as ℤ[1/k] ⋊ ℤ.
pub type BsGroup = SemiDirect<RingContext>;

/// Membership in the subsets `A = ncl(a)`, `Ab = {a^y b}` and `A₁ = {a^y : y a unit}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_a: bool,
    pub in_ab: bool,
    pub in_a1: bool,
}

impl SemiDirect<RingContext> {
    pub fn new(k: i64) -> Result<Self> {
        Ok(SemiDirect::over(RingContext::new(k)?))
    }

    pub fn context(&self) -> RingContext {
        *self.ring()
    }

    pub fn element(&self, y: ZkRational, m: i64) -> BsElement {
        assert_eq!(y.k(), self.k(), "coefficient from another ring");
        GroupElement::new(y, m)
    }

    /// `(z·k^{-e}, m)`.
    pub fn elem(&self, z: i64, e: i64, m: i64) -> BsElement {
        GroupElement::new(self.context().normalize(BigInt::from(z), e), m)
    }

    /// The generator `a = (1, 0)`.
    pub fn a(&self) -> BsElement {
        self.elem(1, 0, 0)
    }

    /// The generator `b = (0, 1)`.
    pub fn b(&self) -> BsElement {
        self.elem(0, 0, 1)
    }

    /// `gⁿ` by the closed form; total over ℤ[1/k].
    pub fn pow(&self, g: &BsElement, n: i64) -> BsElement {
        self.try_pow(g, &n)
            .expect("k^{-m} - 1 divides k^{-mn} - 1 in ℤ[1/k]")
    }

    pub fn classify(&self, g: &BsElement) -> Membership {
        Membership {
            in_a: g.m == 0,
            in_ab: g.m == 1,
            in_a1: g.m == 0 && g.y.is_unit(),
        }
    }

    /// The module action `a₁^y = (y'·y, 0)` for `a₁ = (y', 0)`.
    pub fn a_power(&self, a1: &BsElement, y: &ZkRational) -> BsElement {
        GroupElement::new(&a1.y * y, 0)
    }

    /// The automorphism `λ: a^y b^m ↦ a₁^y b₁^m` for a generating pair `a₁ ∈ A₁`, `b₁ ∈ Ab`.
    pub fn lambda(&self, a1: &BsElement, b1: &BsElement, g: &BsElement) -> Result<BsElement> {
        if !self.classify(a1).in_a1 || !self.classify(b1).in_ab {
            return Err(Error::NotGeneratingPair(format!("a1={a1}, b1={b1}")));
        }
        Ok(self.mul(&self.a_power(a1, &g.y), &self.pow(b1, g.m)))
    }

    /// Parses the rendering `(y, m)`.
    pub fn parse_element(&self, src: &str) -> Result<BsElement> {
        let inner = src
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("expected `(y, m)`, got `{src}`"),
            })?;
        let (y, m) = inner.rsplit_once(',').ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: format!("expected a comma in `{src}`"),
        })?;
        let m = m.trim().parse().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("bad exponent in `{src}`"),
        })?;
        Ok(GroupElement::new(self.context().parse(y)?, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> BsGroup {
        BsGroup::new(2).unwrap()
    }

    #[test]
    fn product_examples() {
        let g = g2();
        assert_eq!(g.mul(&g.a(), &g.b()), g.elem(1, 0, 1));
        assert_eq!(g.mul(&g.b(), &g.a()), g.elem(1, 1, 1));
        let x = g.elem(5, 2, -3);
        assert_eq!(g.mul(&x, &g.identity()), x);
    }

    #[test]
    fn inverse_examples() {
        let g = g2();
        assert_eq!(g.inv(&g.elem(1, 0, 1)), g.elem(-2, 0, -1));
        assert_eq!(g.inv(&g.identity()), g.identity());
        let g3 = BsGroup::new(3).unwrap();
        assert_eq!(g3.inv(&g3.a()), g3.elem(-1, 0, 0));
    }

    #[test]
    fn conjugation_and_commutator_examples() {
        let g = g2();
        assert_eq!(g.conj(&g.a(), &g.b()), g.elem(2, 0, 0));
        assert_eq!(g.conj(&g.elem(1, 0, 0), &g.elem(5, 0, 3)), g.elem(8, 0, 0));
        assert_eq!(g.comm(&g.a(), &g.b()), g.elem(1, 0, 0));
        let x = g.elem(3, 1, 2);
        assert_eq!(g.comm(&x, &x), g.identity());
        assert_eq!(g.comm(&x, &g.identity()), g.identity());
    }

    #[test]
    fn power_examples() {
        let g = g2();
        assert_eq!(g.pow(&g.elem(1, 0, 1), 3), g.elem(7, 2, 3));
        assert_eq!(g.pow(&g.elem(3, 1, 2), 0), g.identity());
        assert_eq!(g.pow(&g.a(), 5), g.elem(5, 0, 0));
    }

    #[test]
    fn classify_examples() {
        let g = g2();
        assert_eq!(
            g.classify(&g.a()),
            Membership { in_a: true, in_ab: false, in_a1: true }
        );
        assert!(g.classify(&g.elem(3, 1, 1)).in_ab);
        let g6 = BsGroup::new(6).unwrap();
        let five = g6.elem(5, 0, 0);
        assert!(g6.classify(&five).in_a && !g6.classify(&five).in_a1);
    }

    #[test]
    fn lambda_examples() {
        let g = g2();
        let x = g.elem(3, 1, -2);
        assert_eq!(g.lambda(&g.a(), &g.b(), &x).unwrap(), x);
        let (a1, b1) = (g.elem(2, 0, 0), g.elem(1, 0, 1));
        let la = g.lambda(&a1, &b1, &g.a()).unwrap();
        assert_eq!(la, a1);
        let lb = g.lambda(&a1, &b1, &g.b()).unwrap();
        assert_eq!(g.conj(&la, &lb), g.pow(&la, 2));
        assert!(matches!(
            g.lambda(&g.elem(3, 0, 0), &b1, &x),
            Err(Error::NotGeneratingPair(_))
        ));
    }

    #[test]
    fn element_rendering_round_trips() {
        let g = g2();
        let x = g.elem(3, 1, 2);
        assert_eq!(x.to_string(), "(3*2^-1, 2)");
        assert_eq!(g.parse_element(&x.to_string()).unwrap(), x);
    }
}
