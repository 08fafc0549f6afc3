//! Worked values recomputed with plain rationals, independently of the crate's
//! own normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use bsinterp::group::{BsElement, BsGroup, GroupWord};
use bsinterp::interp::{mu_delta, mu_gamma, theta_z_check, Triple};
use bsinterp::rings::{cor2_residue, fact1_witness, sn_witness, LaurentPoly, RingContext, ZkRational};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn kpow(k: u64, i: i64) -> BigRational {
    Pow::pow(BigRational::from_integer(k.into()), i as i32)
}

fn ratio(x: &ZkRational) -> BigRational {
    BigRational::from_integer(x.num().clone()) / kpow(x.k(), x.e() as i64)
}

/// Membership in ℤ[1/k]: the reduced denominator has only primes of `k`.
fn in_zk(r: &BigRational, k: u64) -> bool {
    let mut d = r.denom().clone();
    let k = BigInt::from(k);
    loop {
        let g = d.gcd(&k);
        if g.is_one() {
            return d.is_one();
        }
        d /= g;
    }
}

fn zk_quotient(a: &BigRational, d: &BigRational, k: u64) -> Option<BigRational> {
    let r = a / d;
    in_zk(&r, k).then_some(r)
}

/// `(y, m)` with rational `y`.
type Pair = (BigRational, i64);

fn pair(x: &BsElement) -> Pair {
    (ratio(&x.y), x.m)
}

fn bs_mul(k: u64, (y1, m1): &Pair, (y2, m2): &Pair) -> Pair {
    (y1 + y2 * kpow(k, -m1), m1 + m2)
}

fn bs_inv(k: u64, (y, m): &Pair) -> Pair {
    (-y * kpow(k, *m), -m)
}

fn bs_pow_iter(k: u64, g: &Pair, n: i64) -> Pair {
    let base = if n < 0 { bs_inv(k, g) } else { g.clone() };
    (0..n.abs()).fold((BigRational::zero(), 0), |acc, _| bs_mul(k, &acc, &base))
}

#[test]
fn normal_form_of_one_half_in_base_six() {
    let ctx = RingContext::new(6).unwrap();
    let x = ctx.normalize(3.into(), 1);
    assert_eq!(ratio(&x), q(1, 2));
    // e is minimal: 1/2 itself is not an integer, 1/2·6 is
    assert!(!(q(1, 2)).is_integer());
    assert!((q(1, 2) * kpow(6, 1)).is_integer());
    assert_eq!((x.num().clone(), x.e()), (BigInt::from(3), 1));
}

#[test]
fn ring_sums_and_products() {
    let c2 = RingContext::new(2).unwrap();
    let s = &c2.normalize(3.into(), 1) + &c2.normalize(1.into(), 2);
    assert_eq!(ratio(&s), q(3, 2) + q(1, 4));
    assert_eq!((s.num().clone(), s.e()), (BigInt::from(7), 2));

    let c6 = RingContext::new(6).unwrap();
    let p = &c6.normalize(3.into(), 1) * &c6.int(2);
    assert_eq!(ratio(&p), q(3, 6) * q(2, 1));
    assert_eq!((p.num().clone(), p.e()), (BigInt::from(1), 0));
}

#[test]
fn zk_division_matches_rational_division() {
    let cases = [(2, 7, 63), (2, 3, 1), (3, 2, 1), (6, 2, 1)];
    for (k, d, a) in cases {
        let ctx = RingContext::new(k).unwrap();
        let got = ctx.int(d).divides(&ctx.int(a)).unwrap();
        let want = zk_quotient(&q(a, 1), &q(d, 1), k as u64);
        assert_eq!(got.as_ref().map(ratio), want, "k={k} d={d} a={a}");
    }
    let c2 = RingContext::new(2).unwrap();
    assert_eq!(c2.int(7).divides(&c2.int(63)).unwrap().map(|x| ratio(&x)), Some(q(9, 1)));
    let c6 = RingContext::new(6).unwrap();
    let half = c6.int(2).divides(&c6.int(1)).unwrap().unwrap();
    assert_eq!((half.num().clone(), half.e()), (BigInt::from(3), 1));
    assert!(c6.zero().divides(&c6.one()).is_err());
}

#[test]
fn units_of_base_six() {
    let ctx = RingContext::new(6).unwrap();
    for n in -40i64..=40 {
        // trial division by the primes of 6
        let mut r = n.abs();
        for p in [2, 3] {
            while r != 0 && r % p == 0 {
                r /= p;
            }
        }
        assert_eq!(ctx.int(n).is_unit(), r == 1, "n={n}");
    }
    assert!(ctx.int(4).is_unit());
    assert!(!ctx.int(5).is_unit());
}

#[test]
fn laurent_divisions() {
    let d = LaurentPoly::x_pow_minus_one(2);
    let f = LaurentPoly::x_pow_minus_one(6);
    let quo = d.divides(&f).unwrap().unwrap();
    let expected = LaurentPoly::from_terms([(4, 1), (2, 1), (0, 1)]);
    assert_eq!(quo, expected);
    assert_eq!(&d * &expected, f);
    assert!(LaurentPoly::x_pow_minus_one(4).divides(&f).unwrap().is_none());
    let neg = LaurentPoly::x_pow_minus_one(-3);
    let quo = neg.divides(&f).unwrap().unwrap();
    assert_eq!(&neg * &quo, f);
}

#[test]
fn cor2_residues() {
    let c2 = RingContext::new(2).unwrap();
    let r = cor2_residue(&c2, 3, 2).unwrap();
    assert_eq!(ratio(&r), q(63, 3));
    assert_eq!(ratio(&r), q(21, 1));
    assert!(zk_quotient(&(q(21, 1) - q(3, 1)), &q(3, 1), 2).is_some());

    let c3 = RingContext::new(3).unwrap();
    let r = cor2_residue(&c3, 2, -1).unwrap();
    let want = (kpow(3, -2) - q(1, 1)) / (kpow(3, -1) - q(1, 1));
    assert_eq!(want, q(4, 3));
    assert_eq!(ratio(&r), want);
    assert!(zk_quotient(&(want - q(2, 1)), &(kpow(3, -1) - q(1, 1)), 3).is_some());
}

#[test]
fn fact1_witnesses() {
    let c2 = RingContext::new(2).unwrap();
    let oracle = |y: i64| (1u32..=8).find(|&n| zk_quotient(&q(y, 1), &(kpow(2, n as i64) - q(1, 1)), 2).is_none());
    for y in [1, 6] {
        assert_eq!(fact1_witness(&c2.int(y), 8), oracle(y), "y={y}");
    }
    assert_eq!(fact1_witness(&c2.int(1), 8), Some(2));
    assert_eq!(fact1_witness(&c2.int(6), 8), Some(3));
    assert_eq!(fact1_witness(&c2.zero(), 8), None);
}

#[test]
fn sn_witnesses() {
    let c2 = RingContext::new(2).unwrap();
    let oracle = |l: i64, z: i64, t: i64, n: i64| {
        let d = kpow(2, n) - q(1, 1);
        let num = q(l, 1) * (kpow(2, n * z) - q(1, 1)) - q(t, 1) * &d;
        zk_quotient(&num, &(&d * &d), 2)
    };
    for (l, z, t, n) in [(1, 2, 2, 1), (1, 2, 3, 2), (1, 1, 1, 3), (2, 3, 6, -2)] {
        let got = sn_witness(&c2.int(l), z, &c2.int(t), n).unwrap();
        assert_eq!(got.as_ref().map(ratio), oracle(l, z, t, n), "({l},{z},{t},{n})");
    }
    assert_eq!(oracle(1, 2, 2, 1), Some(q(1, 1)));
    assert_eq!(oracle(1, 2, 3, 2), None);
}

#[test]
fn group_products_inverses_and_commutators() {
    let g = BsGroup::new(2).unwrap();
    let (a, b) = (g.a(), g.b());
    let ab = g.mul(&b, &a);
    assert_eq!(pair(&ab), bs_mul(2, &pair(&b), &pair(&a)));
    assert_eq!(pair(&ab), (q(1, 2), 1));

    let x = g.elem(1, 0, 1);
    let xi = g.inv(&x);
    assert_eq!(pair(&xi), bs_inv(2, &pair(&x)));
    assert_eq!(pair(&xi), (q(-2, 1), -1));
    assert_eq!(bs_mul(2, &pair(&x), &pair(&xi)), (BigRational::zero(), 0));

    let h = g.elem(5, 0, 3);
    let c = g.conj(&a, &h);
    let want = bs_mul(2, &bs_mul(2, &bs_inv(2, &pair(&h)), &pair(&a)), &pair(&h));
    assert_eq!(pair(&c), want);
    assert_eq!(want, (q(8, 1), 0));

    let comm = g.comm(&a, &b);
    let (pa, pb) = (pair(&a), pair(&b));
    let want = bs_mul(2, &bs_mul(2, &bs_mul(2, &bs_inv(2, &pa), &bs_inv(2, &pb)), &pa), &pb);
    assert_eq!(pair(&comm), want);
    assert_eq!(want, (q(1, 1), 0));
}

#[test]
fn powers_against_iterated_products() {
    for k in [2u64, 3, 6] {
        let g = BsGroup::new(k as i64).unwrap();
        for (z, e, m) in [(1, 0, 1), (3, 1, -2), (-5, 0, 2), (7, 2, 0)] {
            let x = g.elem(z, e, m);
            for n in -7..=7 {
                assert_eq!(pair(&g.pow(&x, n)), bs_pow_iter(k, &pair(&x), n), "k={k} x={x} n={n}");
            }
        }
    }
    let g = BsGroup::new(2).unwrap();
    let cube = g.pow(&g.elem(1, 0, 1), 3);
    assert_eq!(pair(&cube), (q(7, 4), 3));
    assert_eq!((kpow(2, -3) - q(1, 1)) / (kpow(2, -1) - q(1, 1)), q(7, 4));
}

#[test]
fn word_commutator_has_trivial_exponent() {
    let g = BsGroup::new(2).unwrap();
    let w: GroupWord = "a^2 b^-1 a^-2 b".parse().unwrap();
    let bindings = [("a".to_string(), g.a()), ("b".to_string(), g.b())].into_iter().collect();
    let got = w.eval(&g, &bindings).unwrap();
    let (pa, pb) = (pair(&g.a()), pair(&g.b()));
    let a2 = bs_pow_iter(2, &pa, 2);
    let want = bs_mul(
        2,
        &bs_mul(2, &bs_mul(2, &a2, &bs_inv(2, &pb)), &bs_inv(2, &a2)),
        &pb,
    );
    assert_eq!(pair(&got), want);
    assert_eq!(got.m, 0);
}

#[test]
fn lambda_respects_the_defining_relation() {
    let g = BsGroup::new(2).unwrap();
    let (a1, b1) = (g.elem(2, 0, 0), g.elem(1, 0, 1));
    let (la, lb) = (pair(&a1), pair(&b1));
    let lhs = bs_mul(2, &bs_mul(2, &bs_inv(2, &lb), &la), &lb);
    assert_eq!(lhs, bs_pow_iter(2, &la, 2));
    assert_eq!(pair(&g.conj(&a1, &b1)), lhs);
}

#[test]
fn delta_coordinates() {
    let g = BsGroup::new(2).unwrap();
    let x = mu_delta(&g, &Triple::new(3, -1, 2));
    assert_eq!(pair(&x), (q(3, 1) * kpow(2, -1), 2));
    let l = mu_delta(&g, &Triple::new(1, 1, 0));
    let r = mu_delta(&g, &Triple::new(2, 0, 0));
    assert_eq!(q(1, 1) * kpow(2, 1), q(2, 1) * kpow(2, 0));
    assert_eq!(l, r);
}

#[test]
fn gamma_coordinate_of_a_power() {
    let g = BsGroup::new(2).unwrap();
    let b1 = g.elem(1, 0, 1);
    let sq = g.pow(&b1, 2);
    assert_eq!(pair(&sq), (q(3, 2), 2));
    assert_eq!(mu_gamma(&g, &sq, &b1).unwrap(), 2);
}

#[test]
fn theta_z_instances() {
    // a₁ = a, b₁ = (1, 1)
    let params = [1, 0, 0, 1, 0, 1];
    let lhs = q(3, 1) * kpow(2, -1);
    let rhs = (kpow(2, -2) - q(1, 1)) / (kpow(2, -1) - q(1, 1));
    assert_eq!(lhs, rhs);
    assert!(theta_z_check(2, [3, -1, 2, 2], params).unwrap());
    assert!(!theta_z_check(2, [1, 0, 2, 1], params).unwrap());
    // b₁ = b: both sides vanish exactly when z = 0
    let params = [1, 0, 0, 0, 0, 1];
    for i in -3..=3 {
        for m in -3..=3 {
            assert!(theta_z_check(2, [0, i, m, m], params).unwrap());
        }
    }
}

#[test]
fn fact2_against_prime_stripped_denominators() {
    for k in [2u64, 3, 6, 10] {
        let ctx = RingContext::new(k as i64).unwrap();
        for n in (-8i64..=8).filter(|&n| n != 0) {
            for m in -8i64..=8 {
                let want = zk_quotient(&(kpow(k, m) - q(1, 1)), &(kpow(k, n) - q(1, 1)), k);
                let got = ctx.k_pow_minus_one(n).divides(&ctx.k_pow_minus_one(m)).unwrap();
                assert_eq!(got.as_ref().map(ratio), want, "k={k} n={n} m={m}");
                assert_eq!(want.is_some(), m % n == 0, "k={k} n={n} m={m}");
            }
        }
    }
}

#[test]
fn oracle_sign_conventions() {
    assert!(in_zk(&q(-3, 4), 2));
    assert!(!in_zk(&q(1, 3), 2));
    assert!(q(-7, 4).is_negative());
}
