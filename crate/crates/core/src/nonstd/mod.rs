//! BS(1,k) over other exponential rings: the ring of fractions
//! `S⁻¹R = R[1/k^E]`, the group `R[1/k^E] ⋊ E`, exponentiation by `E`, and
//! the test suites for the ring laws and the MR-axioms.
//!
//! [`IntRing`] is ℤ itself; its fractions are ℤ[1/k] and its group is
//! element-for-element the group of [`crate::group`]. [`SymRing`] adds an
//! infinite `ω`.

mod frac;
mod suites;
mod symbolic;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rings::RingContext;

pub use frac::{bs_nonstd, coord_map, zexp_pow, Frac, FracElement, NonstdGroup};
pub use suites::{
    expring_laws_suite, mr_axiom_suite, mr_samples_standard, mr_samples_symbolic,
    standard_table_check, LawReport, MrReport, MrSample, MutatedExpRing, TableReport,
};
pub use symbolic::{SymExp, SymExpo, SymRing};

/// An ordered commutative ring with an exponent subgroup `E ∋ 1` of its
/// additive group and a map `i ↦ kⁱ` on (part of) `E`.
///
/// The laws checked by [`expring_laws_suite`]: `k^{i₁}k^{i₂} = k^{i₁+i₂}`,
/// `(k^{i₁})^{i₂} = k^{i₁i₂}`, injectivity, `k⁰ = 1`, `k¹ = k` and `kⁱ > 0`.
pub trait ExpRing: Clone + fmt::Debug {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display;
    type Exp: Clone + Eq + Hash + fmt::Debug + fmt::Display;

    fn name(&self) -> String;
    fn k(&self) -> u64;

    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `-1`, `0` or `1`: the positivity cone.
    fn signum(&self, a: &Self::Elem) -> i8;

    fn exp_from_int(&self, n: i64) -> Self::Exp;
    /// `Some(n)` when the exponent is the standard integer `n`.
    fn exp_as_int(&self, i: &Self::Exp) -> Option<i64>;
    /// The integer `b` in `i = (infinite part) + b`.
    fn exp_standard_part(&self, i: &Self::Exp) -> i64;
    fn exp_add(&self, i: &Self::Exp, j: &Self::Exp) -> Self::Exp;
    fn exp_neg(&self, i: &Self::Exp) -> Self::Exp;
    /// Fails when the product leaves `E`.
    fn exp_mul(&self, i: &Self::Exp, j: &Self::Exp) -> Result<Self::Exp>;
    fn exp_signum(&self, i: &Self::Exp) -> i8;
    /// `E` as a subgroup of the ring.
    fn exp_embed(&self, i: &Self::Exp) -> Self::Elem;

    fn k_pow(&self, i: &Self::Exp) -> Result<Self::Elem>;

    /// `(q, d)` with `b·q = a·k^d`, if `a/b` lies in the ring of fractions.
    fn div_up_to_k(&self, a: &Self::Elem, b: &Self::Elem) -> Option<(Self::Elem, u32)>;
    /// The canonical `(num', den')` of the fraction `num·k^{-den}`.
    fn normalize_frac(&self, num: Self::Elem, den: &Self::Exp) -> (Self::Elem, Self::Exp);

    fn zero(&self) -> Self::Elem {
        self.from_int(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_int(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn exp_sub(&self, i: &Self::Exp, j: &Self::Exp) -> Self::Exp {
        self.exp_add(i, &self.exp_neg(j))
    }
}

/// The standard ring ℤ with `E = ℤ`; `kⁱ` is defined for `i ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRing {
    k: u64,
}

impl IntRing {
    pub fn new(k: i64) -> Result<Self> {
        RingContext::new(k)?;
        Ok(IntRing { k: k as u64 })
    }
}

impl ExpRing for IntRing {
    type Elem = BigInt;
    type Exp = i64;

    fn name(&self) -> String {
        format!("Z (k = {})", self.k)
    }

    fn k(&self) -> u64 {
        self.k
    }

    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn signum(&self, a: &BigInt) -> i8 {
        a.signum().to_i8().expect("signum is small")
    }

    fn exp_from_int(&self, n: i64) -> i64 {
        n
    }

    fn exp_as_int(&self, i: &i64) -> Option<i64> {
        Some(*i)
    }

    fn exp_standard_part(&self, i: &i64) -> i64 {
        *i
    }

    fn exp_add(&self, i: &i64, j: &i64) -> i64 {
        i + j
    }

    fn exp_neg(&self, i: &i64) -> i64 {
        -i
    }

    fn exp_mul(&self, i: &i64, j: &i64) -> Result<i64> {
        i.checked_mul(*j)
            .ok_or_else(|| Error::OutOfRange(format!("{i}·{j} overflows")))
    }

    fn exp_signum(&self, i: &i64) -> i8 {
        i.signum() as i8
    }

    fn exp_embed(&self, i: &i64) -> BigInt {
        BigInt::from(*i)
    }

    fn k_pow(&self, i: &i64) -> Result<BigInt> {
        let e = u32::try_from(*i)
            .map_err(|_| Error::ExponentUndefined(format!("k^{i} is not an integer")))?;
        Ok(BigInt::from(self.k).pow(e))
    }

    fn div_up_to_k(&self, a: &BigInt, b: &BigInt) -> Option<(BigInt, u32)> {
        if b.is_zero() {
            return None;
        }
        let k = BigInt::from(self.k);
        let mut scaled = a.clone();
        for d in 0..=b.bits() as u32 + 1 {
            let (q, r) = scaled.div_rem(b);
            if r.is_zero() {
                return Some((q, d));
            }
            scaled *= &k;
        }
        None
    }

    fn normalize_frac(&self, num: BigInt, den: &i64) -> (BigInt, i64) {
        let k = BigInt::from(self.k);
        let (mut num, mut d) = if *den < 0 {
            (num * k.pow(den.unsigned_abs() as u32), 0)
        } else {
            (num, *den)
        };
        if num.is_zero() {
            return (num, 0);
        }
        while d > 0 && num.is_multiple_of(&k) {
            num /= &k;
            d -= 1;
        }
        (num, d)
    }
}
