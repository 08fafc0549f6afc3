//! The ring ℤ[1/k] of rationals whose denominator divides a power of `k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ambient `k ≥ 2` shared by every value of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    k: u64,
}

impl RingContext {
    pub fn new(k: i64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        Ok(RingContext { k: k as u64 })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn k_big(&self) -> BigInt {
        BigInt::from(self.k)
    }

    pub fn zero(&self) -> ZkRational {
        ZkRational {
            k: self.k,
            num: BigInt::zero(),
            e: 0,
        }
    }

    pub fn one(&self) -> ZkRational {
        self.int(1)
    }

    pub fn int(&self, n: impl Into<BigInt>) -> ZkRational {
        self.normalize(n.into(), 0)
    }

    /// Canonical form of `num·k^{-e}`; `e` may be negative.
    pub fn normalize(&self, num: BigInt, e: i64) -> ZkRational {
        if num.is_zero() {
            return self.zero();
        }
        let k = self.k_big();
        let (mut num, mut e) = if e < 0 {
            (num * pow_big(&k, e.unsigned_abs()), 0u64)
        } else {
            (num, e as u64)
        };
        while e > 0 {
            let (q, r) = num.div_rem(&k);
            if !r.is_zero() {
                break;
            }
            num = q;
            e -= 1;
        }
        ZkRational { k: self.k, num, e }
    }

    /// `k^i` for any integer `i`.
    pub fn k_pow(&self, i: i64) -> ZkRational {
        self.normalize(BigInt::one(), -i)
    }

    /// `k^i - 1`, the recurring divisor of the third section's facts.
    pub fn k_pow_minus_one(&self, i: i64) -> ZkRational {
        &self.k_pow(i) - &self.one()
    }

    /// Parses `num`, `num*K^-e` or `num*K^e`, where `K` must equal this context's `k`.
    pub fn parse(&self, src: &str) -> Result<ZkRational> {
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let syntax = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in `{src}`"),
        };
        let (num_part, exp_part) = match compact.split_once('*') {
            Some((n, rest)) => (n, Some(rest)),
            None => (compact.as_str(), None),
        };
        let num = BigInt::from_str(num_part).map_err(|_| syntax("bad numerator"))?;
        let Some(rest) = exp_part else {
            return Ok(self.normalize(num, 0));
        };
        let (base, exp) = rest.split_once('^').ok_or_else(|| syntax("expected `^`"))?;
        let base: u64 = base.parse().map_err(|_| syntax("bad base"))?;
        if base != self.k {
            return Err(Error::ContextMismatch(base, self.k));
        }
        let exp: i64 = exp.parse().map_err(|_| syntax("bad exponent"))?;
        Ok(self.normalize(num, -exp))
    }
}

fn pow_big(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// An element `num·k^{-e}` of ℤ[1/k] with `e` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZkRational {
    k: u64,
    num: BigInt,
    e: u64,
}

impl ZkRational {
    pub fn context(&self) -> RingContext {
        RingContext { k: self.k }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.e == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_positive() {
            1
        } else if self.num.is_negative() {
            -1
        } else {
            0
        }
    }

    fn check(&self, other: &ZkRational) -> Result<()> {
        if self.k != other.k {
            return Err(Error::ContextMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ZkRational) -> Result<ZkRational> {
        self.check(other)?;
        let e = self.e.max(other.e);
        let k = self.context().k_big();
        let lhs = &self.num * pow_big(&k, e - self.e);
        let rhs = &other.num * pow_big(&k, e - other.e);
        Ok(self.context().normalize(lhs + rhs, e as i64))
    }

    pub fn try_mul(&self, other: &ZkRational) -> Result<ZkRational> {
        self.check(other)?;
        Ok(self
            .context()
            .normalize(&self.num * &other.num, (self.e + other.e) as i64))
    }

    /// Multiplies by `k^i`.
    pub fn shift(&self, i: i64) -> ZkRational {
        self.context().normalize(self.num.clone(), self.e as i64 - i)
    }

    pub fn mul_int(&self, n: &BigInt) -> ZkRational {
        self.context().normalize(&self.num * n, self.e as i64)
    }

    /// Exact quotient `a / self` inside ℤ[1/k], if it exists.
    pub fn divides(&self, a: &ZkRational) -> Result<Option<ZkRational>> {
        self.check(a)?;
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.context();
        if a.is_zero() {
            return Ok(Some(ctx.zero()));
        }
        let g = a.num.gcd(&self.num);
        let mut p = &a.num / &g;
        let mut q = &self.num / &g;
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        if !strip_k_factors(&q, self.k).is_one() {
            return Ok(None);
        }
        let k = ctx.k_big();
        let mut j = 0i64;
        let mut kj = BigInt::one();
        while !(&kj % &q).is_zero() {
            kj *= &k;
            j += 1;
        }
        let quotient = p * (kj / q);
        Ok(Some(ctx.normalize(quotient, j + a.e as i64 - self.e as i64)))
    }

    /// Whether `self` is a unit: nonzero with every prime factor of `num` dividing `k`.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && strip_k_factors(&self.num.abs(), self.k).is_one()
    }

    pub fn cmp_value(&self, other: &ZkRational) -> Ordering {
        let diff = self - other;
        diff.num.sign().cmp(&num_bigint::Sign::NoSign)
    }
}

/// Divides out every prime factor shared with `k`.
pub(crate) fn strip_k_factors(n: &BigInt, k: u64) -> BigInt {
    let k = BigInt::from(k);
    let mut r = n.abs();
    if r.is_zero() {
        return r;
    }
    loop {
        let g = r.gcd(&k);
        if g.is_one() {
            return r;
        }
        while (&r % &g).is_zero() {
            r /= &g;
        }
    }
}

impl PartialOrd for ZkRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZkRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.cmp_value(other))
    }
}

impl fmt::Display for ZkRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}*{}^-{}", self.num, self.k, self.e)
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&ZkRational> for &ZkRational {
            type Output = ZkRational;
            fn $method(self, rhs: &ZkRational) -> ZkRational {
                self.$try(rhs).expect("operands from different rings")
            }
        }
        impl $trait<ZkRational> for ZkRational {
            type Output = ZkRational;
            fn $method(self, rhs: ZkRational) -> ZkRational {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Mul, mul, try_mul);

impl Sub<&ZkRational> for &ZkRational {
    type Output = ZkRational;
    fn sub(self, rhs: &ZkRational) -> ZkRational {
        self + &(-rhs)
    }
}

impl Sub<ZkRational> for ZkRational {
    type Output = ZkRational;
    fn sub(self, rhs: ZkRational) -> ZkRational {
        &self - &rhs
    }
}

impl Neg for &ZkRational {
    type Output = ZkRational;
    fn neg(self) -> ZkRational {
        ZkRational {
            k: self.k,
            num: -&self.num,
            e: self.e,
        }
    }
}

impl Neg for ZkRational {
    type Output = ZkRational;
    fn neg(self) -> ZkRational {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: i64) -> RingContext {
        RingContext::new(k).unwrap()
    }

    fn fields(x: &ZkRational) -> (i64, u64) {
        (x.num().to_i64().unwrap(), x.e())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(fields(&ctx(2).normalize(4.into(), 2)), (1, 0));
        assert_eq!(fields(&ctx(6).normalize(3.into(), 1)), (3, 1));
        assert_eq!(fields(&ctx(2).normalize(3.into(), -2)), (12, 0));
        assert_eq!(ctx(5).normalize(0.into(), 7), ctx(5).zero());
    }

    #[test]
    fn arithmetic_examples() {
        let c = ctx(2);
        let x = c.normalize(3.into(), 1) + c.normalize(1.into(), 2);
        assert_eq!(fields(&x), (7, 2));
        let c6 = ctx(6);
        let y = c6.normalize(3.into(), 1) * c6.int(2);
        assert_eq!(y, c6.one());
    }

    #[test]
    fn divides_examples() {
        let c2 = ctx(2);
        assert_eq!(c2.int(7).divides(&c2.int(63)).unwrap(), Some(c2.int(9)));
        assert_eq!(c2.int(3).divides(&c2.int(1)).unwrap(), None);
        let c3 = ctx(3);
        assert_eq!(c3.int(2).divides(&c3.one()).unwrap(), None);
        let c6 = ctx(6);
        assert_eq!(
            c6.int(2).divides(&c6.one()).unwrap(),
            Some(c6.normalize(3.into(), 1))
        );
        assert_eq!(c6.zero().divides(&c6.one()), Err(Error::DivisionByZero));
    }

    #[test]
    fn unit_examples() {
        assert!(ctx(6).int(4).is_unit());
        assert!(!ctx(6).int(5).is_unit());
        assert!(ctx(2).int(1).is_unit());
        assert!(ctx(2).int(-8).is_unit());
        assert!(!ctx(2).zero().is_unit());
    }

    #[test]
    fn mixing_contexts_is_an_error() {
        assert_eq!(
            ctx(2).one().try_add(&ctx(3).one()),
            Err(Error::ContextMismatch(2, 3))
        );
    }

    #[test]
    fn rendering_round_trips() {
        let c = ctx(2);
        let x = c.normalize(3.into(), 1);
        assert_eq!(x.to_string(), "3*2^-1");
        assert_eq!(c.parse("3*2^-1").unwrap(), x);
        assert_eq!(c.parse("-5").unwrap(), c.int(-5));
        assert_eq!(c.parse("5*2^0").unwrap(), c.int(5));
        assert_eq!(c.parse("3 * 2^2").unwrap(), c.int(12));
        assert!(matches!(c.parse("3*3^-1"), Err(Error::ContextMismatch(3, 2))));
    }
}
