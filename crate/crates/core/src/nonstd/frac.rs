use std::fmt;

use super::ExpRing;
use crate::error::{Error, Result};
use crate::group::{CoefficientRing, Element, GroupElement, SemiDirect};

/// `num·k^{-den}` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracElement<N, X> {
    pub num: N,
    pub den: X,
}

impl<N: fmt::Display, X: fmt::Display> fmt::Display for FracElement<N, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.den.to_string();
        if den == "0" {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/k^({den})", self.num)
        }
    }
}

/// The ring of fractions `R[1/k^E]` of an exponential ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac<R> {
    ring: R,
}

type F<R> = FracElement<<R as ExpRing>::Elem, <R as ExpRing>::Exp>;

impl<R: ExpRing> Frac<R> {
    pub fn new(ring: R) -> Self {
        Frac { ring }
    }

    pub fn base(&self) -> &R {
        &self.ring
    }

    /// The fraction `num / k^den` for `den ≥ 0`.
    pub fn make(&self, num: R::Elem, den: &R::Exp) -> Result<F<R>> {
        if self.ring.exp_signum(den) < 0 {
            return Err(Error::ExponentUndefined(format!("denominator k^({den}) with negative exponent")));
        }
        Ok(self.canon(num, den))
    }

    pub fn from_base(&self, x: R::Elem) -> F<R> {
        self.canon(x, &self.ring.exp_from_int(0))
    }

    fn canon(&self, num: R::Elem, den: &R::Exp) -> F<R> {
        let (num, den) = self.ring.normalize_frac(num, den);
        FracElement { num, den }
    }

    /// `k^d` for a canonical denominator `d`.
    fn base_k_pow(&self, d: &R::Exp) -> R::Elem {
        self.ring
            .k_pow(d)
            .expect("canonical denominators lie in the domain of k^·")
    }

    /// Equality by cross-multiplication `num₁·k^{den₂} = num₂·k^{den₁}`.
    pub fn cross_eq(&self, x: &F<R>, y: &F<R>) -> bool {
        let r = &self.ring;
        r.mul(&x.num, &self.base_k_pow(&y.den)) == r.mul(&y.num, &self.base_k_pow(&x.den))
    }

    pub fn sum(&self, x: &F<R>, y: &F<R>) -> F<R> {
        let r = &self.ring;
        let num = r.add(
            &r.mul(&x.num, &self.base_k_pow(&y.den)),
            &r.mul(&y.num, &self.base_k_pow(&x.den)),
        );
        self.canon(num, &r.exp_add(&x.den, &y.den))
    }

    pub fn product(&self, x: &F<R>, y: &F<R>) -> F<R> {
        let r = &self.ring;
        self.canon(r.mul(&x.num, &y.num), &r.exp_add(&x.den, &y.den))
    }

    pub fn negate(&self, x: &F<R>) -> F<R> {
        FracElement {
            num: self.ring.neg(&x.num),
            den: x.den.clone(),
        }
    }

    /// `x / y`, when it lies in the ring of fractions.
    pub fn quotient(&self, x: &F<R>, y: &F<R>) -> Option<F<R>> {
        let r = &self.ring;
        if r.signum(&y.num) == 0 {
            return None;
        }
        let lifted = self.product(x, &self.from_base(self.base_k_pow(&y.den)));
        let (q, d) = r.div_up_to_k(&lifted.num, &y.num)?;
        let den = r.exp_add(&lifted.den, &r.exp_from_int(i64::from(d)));
        Some(self.canon(q, &den))
    }

    /// `kⁱ` for every `i ∈ E`, as `k^{i+n}/kⁿ` with `n` covering a negative standard part.
    pub fn power_of_k(&self, i: &R::Exp) -> Result<F<R>> {
        let r = &self.ring;
        let n = (-r.exp_standard_part(i)).max(0);
        let shifted = r.exp_add(i, &r.exp_from_int(n));
        let num = r.k_pow(&shifted)?;
        Ok(self.canon(num, &r.exp_from_int(n)))
    }
}

impl<R: ExpRing> ExpRing for Frac<R> {
    type Elem = F<R>;
    type Exp = R::Exp;

    fn name(&self) -> String {
        format!("fractions of {}", self.ring.name())
    }

    fn k(&self) -> u64 {
        self.ring.k()
    }

    fn from_int(&self, n: i64) -> F<R> {
        self.from_base(self.ring.from_int(n))
    }

    fn add(&self, a: &F<R>, b: &F<R>) -> F<R> {
        self.sum(a, b)
    }

    fn neg(&self, a: &F<R>) -> F<R> {
        self.negate(a)
    }

    fn mul(&self, a: &F<R>, b: &F<R>) -> F<R> {
        self.product(a, b)
    }

    fn signum(&self, a: &F<R>) -> i8 {
        self.ring.signum(&a.num)
    }

    fn exp_from_int(&self, n: i64) -> R::Exp {
        self.ring.exp_from_int(n)
    }

    fn exp_as_int(&self, i: &R::Exp) -> Option<i64> {
        self.ring.exp_as_int(i)
    }

    fn exp_standard_part(&self, i: &R::Exp) -> i64 {
        self.ring.exp_standard_part(i)
    }

    fn exp_add(&self, i: &R::Exp, j: &R::Exp) -> R::Exp {
        self.ring.exp_add(i, j)
    }

    fn exp_neg(&self, i: &R::Exp) -> R::Exp {
        self.ring.exp_neg(i)
    }

    fn exp_mul(&self, i: &R::Exp, j: &R::Exp) -> Result<R::Exp> {
        self.ring.exp_mul(i, j)
    }

    fn exp_signum(&self, i: &R::Exp) -> i8 {
        self.ring.exp_signum(i)
    }

    fn exp_embed(&self, i: &R::Exp) -> F<R> {
        self.from_base(self.ring.exp_embed(i))
    }

    fn k_pow(&self, i: &R::Exp) -> Result<F<R>> {
        self.power_of_k(i)
    }

    fn div_up_to_k(&self, a: &F<R>, b: &F<R>) -> Option<(F<R>, u32)> {
        self.quotient(a, b).map(|q| (q, 0))
    }

    fn normalize_frac(&self, num: F<R>, den: &R::Exp) -> (F<R>, R::Exp) {
        let inv = self.power_of_k(&self.ring.exp_neg(den)).expect("k^E is total on fractions");
        (self.product(&num, &inv), self.ring.exp_from_int(0))
    }
}

impl<R: ExpRing> CoefficientRing for Frac<R> {
    type Scalar = F<R>;
    type Exponent = R::Exp;

    fn k(&self) -> u64 {
        self.ring.k()
    }

    fn zero(&self) -> F<R> {
        self.from_base(self.ring.zero())
    }

    fn add(&self, a: &F<R>, b: &F<R>) -> F<R> {
        self.sum(a, b)
    }

    fn neg(&self, a: &F<R>) -> F<R> {
        self.negate(a)
    }

    fn mul(&self, a: &F<R>, b: &F<R>) -> F<R> {
        self.product(a, b)
    }

    fn div(&self, a: &F<R>, b: &F<R>) -> Option<F<R>> {
        self.quotient(a, b)
    }

    fn k_pow(&self, i: &R::Exp) -> F<R> {
        self.power_of_k(i).expect("k^E is total on fractions")
    }

    fn embed(&self, n: &R::Exp) -> F<R> {
        self.from_base(self.ring.exp_embed(n))
    }

    fn exp_zero(&self) -> R::Exp {
        self.ring.exp_from_int(0)
    }

    fn exp_add(&self, a: &R::Exp, b: &R::Exp) -> R::Exp {
        self.ring.exp_add(a, b)
    }

    fn exp_neg(&self, a: &R::Exp) -> R::Exp {
        self.ring.exp_neg(a)
    }

    fn exp_mul(&self, a: &R::Exp, b: &R::Exp) -> Result<R::Exp> {
        self.ring.exp_mul(a, b)
    }
}

/// `R[1/k^E] ⋊ E`.
pub type NonstdGroup<R> = SemiDirect<Frac<R>>;

/// The group over `ring`, after the ring laws pass on `exps`.
pub fn bs_nonstd<R: ExpRing>(ring: R, exps: &[R::Exp]) -> Result<NonstdGroup<R>> {
    let report = super::expring_laws_suite(&ring, exps);
    if let Some(v) = report.violations.first() {
        return Err(Error::ClaimViolated(format!("{}: {v}", ring.name())));
    }
    Ok(SemiDirect::over(Frac::new(ring)))
}

/// `(z, i, m) ↦ (z·kⁱ, m)`.
pub fn coord_map<R: ExpRing>(g: &NonstdGroup<R>, z: R::Elem, i: &R::Exp, m: R::Exp) -> Result<Element<Frac<R>>> {
    let f = g.ring();
    Ok(GroupElement::new(f.product(&f.from_base(z), &f.power_of_k(i)?), m))
}

/// `gⁿ` for `n ∈ E` by `(y(k^{-mn} - 1)/(k^{-m} - 1), mn)`.
pub fn zexp_pow<R: ExpRing>(g: &NonstdGroup<R>, x: &Element<Frac<R>>, n: &R::Exp) -> Result<Element<Frac<R>>> {
    g.try_pow(x, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonstd::{IntRing, SymExp, SymExpo, SymRing};
    use num_bigint::BigInt;

    #[test]
    fn standard_fraction_reduces() {
        let f = Frac::new(IntRing::new(2).unwrap());
        let x = f.make(BigInt::from(6), &1).unwrap();
        assert_eq!(x, FracElement { num: BigInt::from(3), den: 0 });
        assert!(f.make(BigInt::from(1), &-1).is_err());
    }

    #[test]
    fn symbolic_fraction_cancels() {
        let f = Frac::new(SymRing::new(2).unwrap());
        let x = f.make(SymExp::monomial(1, 1, 0), &SymExpo::omega()).unwrap();
        assert!(f.cross_eq(&x, &f.from_int(1)));
        assert_eq!(x, f.from_int(1));
        let w = f.make(SymExp::omega(), &SymExpo::int(0)).unwrap();
        assert_eq!(w.num, SymExp::omega());
    }

    #[test]
    fn symbolic_group_examples() {
        let ring = SymRing::new(2).unwrap();
        let g: NonstdGroup<SymRing> = SemiDirect::over(Frac::new(ring));
        let f = g.ring();
        let w = SymExpo::omega();
        let a = GroupElement::new(f.from_int(1), SymExpo::int(0));
        let b_w = GroupElement::new(f.from_int(0), w);
        let conj = g.conj(&a, &b_w);
        assert_eq!(conj, GroupElement::new(f.from_base(SymExp::monomial(1, 1, 0)), SymExpo::int(0)));
        assert_eq!(g.conj_longhand(&a, &b_w), conj);

        let x = GroupElement::new(f.from_int(1), w);
        let prod = g.mul(&x, &a);
        let expected = f.sum(&f.from_int(1), &f.power_of_k(&SymExpo::new(-1, 0)).unwrap());
        assert_eq!(prod, GroupElement::new(expected, w));

        let g1 = GroupElement::new(f.from_int(1), SymExpo::int(1));
        let p = zexp_pow(&g, &g1, &w).unwrap();
        let expected = &SymExp::int(2) + &SymExp::monomial(-2, -1, 0);
        assert_eq!(p, GroupElement::new(f.from_base(expected), w));
    }
}
