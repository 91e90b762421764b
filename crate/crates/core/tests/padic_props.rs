use cmbkf::padic::{hensel_lift, minkowski_merge, newton_polygon, Padic, PadicPolynomial};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn padic(p: u64) -> impl Strategy<Value = Padic> {
    (-10_000i64..10_000, 0i64..4, 6i64..20).prop_map(move |(n, v, prec)| {
        if n == 0 {
            Padic::exact_zero(p)
        } else {
            Padic::from_int(p, n, prec).shift(v)
        }
    })
}

fn triple() -> impl Strategy<Value = (Padic, Padic, Padic)> {
    prime().prop_flat_map(|p| (padic(p), padic(p), padic(p)))
}

fn same(a: &Padic, b: &Padic) -> bool {
    a.precision() == b.precision() && a.eq_at_shared_precision(b)
}

proptest! {
    #[test]
    fn addition_associates((x, y, z) in triple()) {
        prop_assert!(same(&(&(&x + &y) + &z), &(&x + &(&y + &z))));
    }

    #[test]
    fn addition_commutes((x, y, _z) in triple()) {
        prop_assert!(same(&(&x + &y), &(&y + &x)));
    }

    #[test]
    fn distributes((x, y, z) in triple()) {
        let lhs = &x * &(&y + &z);
        let rhs = &(&x * &y) + &(&x * &z);
        prop_assert!(lhs.eq_at_shared_precision(&rhs));
    }

    #[test]
    fn valuation_multiplies((x, y, _z) in triple()) {
        if let (Ok(a), Ok(b)) = (x.valuation(), y.valuation()) {
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!((&x * &y).valuation().unwrap().finite(), Some(a + b));
            }
        }
    }

    #[test]
    fn inverse_is_inverse(p in prime(), n in 1i64..5000, v in -3i64..3) {
        let x = Padic::from_int(p, n, 30).shift(v);
        let y = x.inv().unwrap();
        prop_assert!((&x * &y).eq_at_shared_precision(&Padic::one(p, 30)));
    }

    #[test]
    fn hensel_root_is_root(
        p in prime(),
        a in 0i64..7,
        g in prop::collection::vec(-9i64..=9, 1..4),
        c in -5i64..=5,
        target in 4i64..25,
    ) {
        let pi = p as i64;
        let a = a % pi;
        let mut g = g;
        g.push(1);
        if g.iter().rev().fold(0i64, |acc, x| acc * a + x).rem_euclid(pi) == 0 {
            g[0] += 1;
        }
        let mut f = vec![0i64; g.len() + 1];
        for (k, gk) in g.iter().enumerate() {
            f[k + 1] += gk;
            f[k] -= a * gk;
        }
        f[0] += pi * c;
        let poly = PadicPolynomial::from_ints(p, &f, target + 8).unwrap();
        let r = hensel_lift(&poly, &Padic::from_int(p, a, target + 8), target).unwrap();
        let rv = r.representative().unwrap();
        let val = f.iter().rev().fold(BigInt::zero(), |acc, x| acc * &rv + x);
        prop_assert!((val % BigInt::from(p).pow(target as u32)).is_zero());
    }

    #[test]
    fn newton_polygon_of_product_is_merge(
        a in prop::collection::vec((1i64..30, 0u32..3), 2..5),
        b in prop::collection::vec((1i64..30, 0u32..3), 2..5),
    ) {
        let p = 3u64;
        let to = |v: &[(i64, u32)]| v.iter().map(|&(c, e)| c * 3i64.pow(e)).collect::<Vec<_>>();
        let (fa, fb) = (to(&a), to(&b));
        let pa = PadicPolynomial::from_ints(p, &fa, 40).unwrap();
        let pb = PadicPolynomial::from_ints(p, &fb, 40).unwrap();
        let prod = pa.mul(&pb).unwrap();
        let merged = minkowski_merge(&newton_polygon(&pa).unwrap(), &newton_polygon(&pb).unwrap());
        prop_assert_eq!(newton_polygon(&prod).unwrap(), merged);
    }
}

#[test]
fn newton_polygon_examples() {
    use num_rational::Rational64 as R;
    let np = |c: &[i64]| newton_polygon(&PadicPolynomial::from_ints(5, c, 20).unwrap()).unwrap();
    assert_eq!(np(&[-5, 0, 1]), vec![(R::new(1, 2), 2)]);
    assert_eq!(np(&[-6, 0, 1]), vec![(R::from(0), 2)]);
    assert_eq!(np(&[5, -6, 1]), vec![(R::from(0), 1), (R::from(1), 1)]);
}
