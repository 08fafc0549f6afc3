//! Divisibility facts for `x^n - 1` and `k^n - 1` and the witnesses their proofs construct.

use super::laurent::LaurentPoly;
use super::zk::{RingContext, ZkRational};
use crate::error::{Error, Result};

/// `f_l(y) = 1 + y + … + y^{l-1}` for `l > 0`.
pub fn geometric_sum(l: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..l.max(0)).map(|j| (j, 1)))
}

/// `h_l` with `f_l(y) = l + (y - 1)·h_l(y)`, for `l > 0`.
pub fn h_poly(l: i64) -> LaurentPoly {
    let numerator = &geometric_sum(l) - &LaurentPoly::constant(l);
    LaurentPoly::x_pow_minus_one(1)
        .divides(&numerator)
        .expect("y - 1 is nonzero")
        .expect("f_l(1) = l, so y - 1 divides f_l - l")
}

/// `g_l(y) = -y^{-1} - y^{-2} - … - y^{l}` for `l < 0`.
pub fn negative_geometric_sum(l: i64) -> LaurentPoly {
    LaurentPoly::from_terms((l..0).map(|j| (j, -1)))
}

/// The polynomial `g` with `x^{nl} - 1 = (x^n - 1)(l + (x^n - 1)·g)`.
pub fn cor1_witness(n: i64, l: i64) -> LaurentPoly {
    if n == 0 || l == 0 {
        return LaurentPoly::zero();
    }
    let g = if l > 0 {
        h_poly(l).compose_power(n)
    } else {
        let h = h_poly(-l).compose_power(n);
        let xn1 = LaurentPoly::x_pow_minus_one(n);
        let bracket = &LaurentPoly::constant(l) - &(&xn1 * &h);
        &(&bracket * &negative_geometric_sum(l).compose_power(n)) - &h
    };
    assert!(
        fact3_identity_holds(n, l, &g),
        "witness for n={n}, l={l} fails re-expansion"
    );
    g
}

/// Checks `x^{nl} - 1 = (x^n - 1)(l + (x^n - 1)·g)` by expansion.
pub fn fact3_identity_holds(n: i64, l: i64, g: &LaurentPoly) -> bool {
    let xn1 = LaurentPoly::x_pow_minus_one(n);
    let rhs = &xn1 * &(&LaurentPoly::constant(l) + &(&xn1 * g));
    LaurentPoly::x_pow_minus_one(n * l) == rhs
}

/// `r = (k^{nz} - 1)/(k^n - 1)`, checked to satisfy `r ≡ z (mod k^n - 1)`.
pub fn cor2_residue(ctx: &RingContext, z: i64, n: i64) -> Result<ZkRational> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be nonzero".into()));
    }
    let d = ctx.k_pow_minus_one(n);
    let r = d
        .divides(&ctx.k_pow_minus_one(n * z))?
        .ok_or_else(|| Error::ClaimViolated(format!("k^{n}-1 does not divide k^{}-1", n * z)))?;
    let diff = &r - &ctx.int(z);
    if d.divides(&diff)?.is_none() {
        return Err(Error::ClaimViolated(format!(
            "residue {r} is not congruent to {z} modulo {d}"
        )));
    }
    Ok(r)
}

/// The least `n ∈ [1, bound]` with `(k^n - 1) ∤ y`, for `y ≠ 0`.
pub fn fact1_witness(y: &ZkRational, bound: u32) -> Option<u32> {
    if y.is_zero() {
        return None;
    }
    let ctx = y.context();
    (1..=bound).find(|&n| {
        ctx.k_pow_minus_one(n as i64)
            .divides(y)
            .expect("k^n - 1 is nonzero")
            .is_none()
    })
}

/// `s_n = (l(k^{nz} - 1) - t(k^n - 1)) / (k^n - 1)^2` when it lies in ℤ[1/k].
pub fn sn_witness(l: &ZkRational, z: i64, t: &ZkRational, n: i64) -> Result<Option<ZkRational>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be nonzero".into()));
    }
    let ctx = l.context();
    let d = ctx.k_pow_minus_one(n);
    let numerator = &l.try_mul(&ctx.k_pow_minus_one(n * z))? - &t.try_mul(&d)?;
    (&d * &d).divides(&numerator)
}

/// The defining identity of `s_n`: `l(k^{nz} - 1) = t(k^n - 1) + s(k^n - 1)^2`.
pub fn sn_identity_holds(l: &ZkRational, z: i64, t: &ZkRational, n: i64, s: &ZkRational) -> bool {
    let ctx = l.context();
    let d = ctx.k_pow_minus_one(n);
    l * &ctx.k_pow_minus_one(n * z) == &(t * &d) + &(&(s * &d) * &d)
}

/// Integer divisibility `n | m`, with `0 | m` only for `m = 0`.
pub fn int_divides(n: i64, m: i64) -> bool {
    if n == 0 {
        m == 0
    } else {
        m % n == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ctx(k: i64) -> RingContext {
        RingContext::new(k).unwrap()
    }

    #[test]
    fn cor1_examples() {
        assert_eq!(cor1_witness(1, 2), LaurentPoly::one());
        assert!(cor1_witness(1, 0).is_zero());
        let g = cor1_witness(2, -1);
        assert!(fact3_identity_holds(2, -1, &g));
    }

    #[test]
    fn cor2_examples() {
        assert_eq!(cor2_residue(&ctx(2), 3, 2).unwrap(), ctx(2).int(21));
        assert_eq!(cor2_residue(&ctx(2), 0, 1).unwrap(), ctx(2).zero());
        let c3 = ctx(3);
        assert_eq!(cor2_residue(&c3, 2, -1).unwrap(), c3.normalize(big(4), 1));
        assert!(cor2_residue(&c3, 2, 0).is_err());
    }

    #[test]
    fn fact1_examples() {
        let c = ctx(2);
        assert_eq!(fact1_witness(&c.int(1), 10), Some(2));
        assert_eq!(fact1_witness(&c.zero(), 10), None);
        assert_eq!(fact1_witness(&c.int(6), 10), Some(3));
    }

    #[test]
    fn sn_examples() {
        let c = ctx(2);
        assert_eq!(sn_witness(&c.one(), 2, &c.int(2), 1).unwrap(), Some(c.one()));
        for n in [-3, -1, 1, 4] {
            assert_eq!(sn_witness(&c.one(), 1, &c.one(), n).unwrap(), Some(c.zero()));
        }
        assert_eq!(sn_witness(&c.one(), 2, &c.int(3), 2).unwrap(), None);
    }
}
