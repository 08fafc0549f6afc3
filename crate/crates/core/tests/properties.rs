use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use proptest::prelude::*;

use bsinterp::group::{BsElement, BsGroup};
use bsinterp::interp::{mu_delta, mu_delta_section};
use bsinterp::nonstd::{bs_nonstd, zexp_pow, Frac, IntRing, SymExp, SymExpo, SymRing};
use bsinterp::rings::{LaurentPoly, RingContext, ZkRational};

fn kpow(k: u64, i: i64) -> BigRational {
    Pow::pow(BigRational::from_integer(k.into()), i as i32)
}

fn ratio(x: &ZkRational) -> BigRational {
    BigRational::from_integer(x.num().clone()) / kpow(x.k(), x.e() as i64)
}

fn ks() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![2i64, 3, 4, 6, 10])
}

fn zk(ctx: RingContext) -> impl Strategy<Value = ZkRational> {
    (-500i64..=500, 0i64..=4).prop_map(move |(n, e)| ctx.normalize(n.into(), e))
}

fn with_ctx() -> impl Strategy<Value = (RingContext, ZkRational, ZkRational, ZkRational)> {
    ks().prop_flat_map(|k| {
        let ctx = RingContext::new(k).unwrap();
        (Just(ctx), zk(ctx), zk(ctx), zk(ctx))
    })
}

fn elem(g: BsGroup) -> impl Strategy<Value = BsElement> {
    (-60i64..=60, -3i64..=3, -4i64..=4).prop_map(move |(z, e, m)| g.elem(z, e, m))
}

fn with_group() -> impl Strategy<Value = (BsGroup, BsElement, BsElement, BsElement)> {
    ks().prop_flat_map(|k| {
        let g = BsGroup::new(k).unwrap();
        (Just(g.clone()), elem(g.clone()), elem(g.clone()), elem(g))
    })
}

fn sym() -> impl Strategy<Value = SymExp> {
    prop::collection::vec(((-2i64..=2, 0u32..=2), -5i64..=5), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(SymExp::zero(), |acc, ((a, j), c)| &acc + &SymExp::monomial(c, a, j))
    })
}

proptest! {
    #[test]
    fn zk_ops_agree_with_rationals((ctx, x, y, _) in with_ctx()) {
        prop_assert_eq!(ratio(&(&x + &y)), ratio(&x) + ratio(&y));
        prop_assert_eq!(ratio(&(&x - &y)), ratio(&x) - ratio(&y));
        prop_assert_eq!(ratio(&(&x * &y)), ratio(&x) * ratio(&y));
        prop_assert_eq!(x.cmp_value(&y), ratio(&x).cmp(&ratio(&y)));
        let back = ctx.normalize(x.num().clone(), x.e() as i64);
        prop_assert_eq!(&back, &x);
    }

    #[test]
    fn zk_division_is_exact((ctx, x, y, _) in with_ctx()) {
        match y.divides(&x) {
            Err(_) => prop_assert!(y.is_zero()),
            Ok(Some(q)) => prop_assert_eq!(&(&q * &y), &x),
            Ok(None) => {
                // the rational quotient exists but has a denominator prime to k
                let r = ratio(&x) / ratio(&y);
                let mut d = r.denom().clone();
                let k = BigInt::from(ctx.k());
                loop {
                    let g = num_integer::Integer::gcd(&d, &k);
                    if g == BigInt::from(1) { break; }
                    d /= g;
                }
                prop_assert!(d != BigInt::from(1));
            }
        }
    }

    #[test]
    fn ring_axioms((_ctx, x, y, z) in with_ctx()) {
        prop_assert_eq!(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z)));
        prop_assert_eq!(&(&(&x + &y) + &z), &(&x + &(&y + &z)));
        prop_assert_eq!(&(&(&x * &y) * &z), &(&x * &(&y * &z)));
    }

    #[test]
    fn group_axioms((g, x, y, z) in with_group()) {
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert!(g.is_identity(&g.mul(&x, &g.inv(&x))));
        prop_assert_eq!(g.mul(&g.identity(), &x), x.clone());
        prop_assert_eq!(g.conj(&x, &y), g.conj_longhand(&x, &y));
        prop_assert_eq!(g.comm(&x, &y), g.comm_longhand(&x, &y));
    }

    #[test]
    fn product_formula((g, x, y, _) in with_group()) {
        let p = g.mul(&x, &y);
        prop_assert_eq!(ratio(&p.y), ratio(&x.y) + ratio(&y.y) * kpow(g.k(), -x.m));
        prop_assert_eq!(p.m, x.m + y.m);
    }

    #[test]
    fn closed_form_power((g, x, _, _) in with_group(), n in -9i64..=9) {
        prop_assert_eq!(g.pow(&x, n), g.pow_iter(&x, n));
        prop_assert_eq!(g.pow(&x, n), g.pow(&g.inv(&x), -n));
    }

    #[test]
    fn delta_section_is_a_section((g, x, _, _) in with_group()) {
        prop_assert_eq!(mu_delta(&g, &mu_delta_section(&x)), x);
    }

    #[test]
    fn laurent_divisibility_is_integer_divisibility(n in -10i64..=10, m in -10i64..=10) {
        prop_assume!(n != 0);
        let d = LaurentPoly::x_pow_minus_one(n);
        let f = LaurentPoly::x_pow_minus_one(m);
        let got = d.divides(&f).unwrap();
        prop_assert_eq!(got.is_some(), m % n == 0);
        if let Some(q) = got {
            prop_assert_eq!(&d * &q, f);
        }
    }

    #[test]
    fn symbolic_order_is_compatible(x in sym(), y in sym()) {
        let sx = x.signum();
        let sy = y.signum();
        prop_assert_eq!((&x * &y).signum(), sx * sy);
        prop_assert_eq!((-&x).signum(), -sx);
        if sx > 0 && sy > 0 {
            prop_assert_eq!((&x + &y).signum(), 1);
        }
        let text = x.to_string();
        prop_assert_eq!(text.parse::<SymExp>().unwrap(), x);
    }

    #[test]
    fn fraction_equality_is_a_congruence(x in sym(), y in sym(), d in 0i64..=2, a in 0i64..=1) {
        let f = Frac::new(SymRing::new(2).unwrap());
        let den = SymExpo::new(a, d);
        let fx = f.make(x.clone(), &den).unwrap();
        // multiplying numerator and denominator by k leaves the class unchanged
        let scaled = f.make(x.scale(&BigInt::from(2)), &SymExpo::new(a, d + 1)).unwrap();
        prop_assert!(f.cross_eq(&fx, &scaled));
        prop_assert_eq!(&fx, &scaled);
        let fy = f.from_base(y);
        let lhs = f.sum(&fx, &fy);
        let rhs = f.sum(&scaled, &fy);
        prop_assert!(f.cross_eq(&lhs, &rhs));
        prop_assert!(f.cross_eq(&f.product(&fx, &fy), &f.product(&scaled, &fy)));
    }

    #[test]
    fn zexp_is_additive(z in -20i64..=20, m in -3i64..=3, n1 in -5i64..=5, n2 in -5i64..=5) {
        let g = bs_nonstd(IntRing::new(3).unwrap(), &[-2, -1, 0, 1, 2]).unwrap();
        let f = g.ring();
        let x = bsinterp::group::GroupElement::new(f.from_base(BigInt::from(z)), m);
        let lhs = zexp_pow(&g, &x, &(n1 + n2)).unwrap();
        let rhs = g.mul(&zexp_pow(&g, &x, &n1).unwrap(), &zexp_pow(&g, &x, &n2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_zexp_is_additive(c in -5i64..=5, a in -1i64..=1, b1 in -2i64..=2, b2 in -2i64..=2) {
        let ring = SymRing::new(2).unwrap();
        let g = bs_nonstd(ring, &[SymExpo::int(0), SymExpo::int(1), SymExpo::omega()]).unwrap();
        let f = g.ring();
        let x = bsinterp::group::GroupElement::new(f.from_base(SymExp::int(c)), SymExpo::int(1));
        let (n1, n2) = (SymExpo::new(a, b1), SymExpo::int(b2));
        let sum = SymExpo::new(a, b1 + b2);
        if let (Ok(lhs), Ok(p1), Ok(p2)) = (zexp_pow(&g, &x, &sum), zexp_pow(&g, &x, &n1), zexp_pow(&g, &x, &n2)) {
            prop_assert_eq!(lhs, g.mul(&p1, &p2));
        }
    }
}

#[test]
fn zero_has_no_quotients() {
    let ctx = RingContext::new(2).unwrap();
    assert!(ctx.zero().divides(&ctx.one()).is_err());
    assert!(ratio(&ctx.zero()).is_zero());
}

#[test]
fn symbolic_powers_are_defined_at_omega() {
    let ring = SymRing::new(2).unwrap();
    let g = bs_nonstd(ring, &[SymExpo::int(0), SymExpo::int(1), SymExpo::omega()]).unwrap();
    let x = bsinterp::group::GroupElement::new(g.ring().from_base(SymExp::int(1)), SymExpo::int(1));
    let p = zexp_pow(&g, &x, &SymExpo::new(1, -1)).unwrap();
    let q = zexp_pow(&g, &x, &SymExpo::int(1)).unwrap();
    assert_eq!(g.mul(&p, &q), zexp_pow(&g, &x, &SymExpo::omega()).unwrap());
}
