use proptest::prelude::*;

use monogen_core::funcfield::{factor, is_irreducible, product_formula_sum, support};
use monogen_core::monorder::{orders_equal, BaseRing, MonOrder};
use monogen_core::parse::{parse_bivar, parse_ratfunc};
use monogen_core::tower::{AlgElem, Tower};
use monogen_core::{Fq, FqCtx, Place, PlaceSet, Poly, RatFunc};

fn field(p: u64) -> Fq {
    FqCtx::prime(p).unwrap()
}

fn poly(p: u64, c: &[u64]) -> Poly {
    Poly::from_coeffs(&field(p), c.iter().map(|a| a % p).collect())
}

fn nonzero(p: u64, c: &[u64]) -> Poly {
    let f = poly(p, c);
    if f.is_zero() {
        Poly::one(&field(p))
    } else {
        f
    }
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..7, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_expands_back(p in prime(), c in coeffs(9)) {
        let f = nonzero(p, &c);
        let fac = factor(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && is_irreducible(g));
        }
    }

    #[test]
    fn ratfunc_field_axioms(p in prime(), a in coeffs(5), b in coeffs(4), c in coeffs(5), d in coeffs(4)) {
        let u = RatFunc::new(poly(p, &a), nonzero(p, &b)).unwrap();
        let v = RatFunc::new(poly(p, &c), nonzero(p, &d)).unwrap();
        prop_assert_eq!(&(&u + &v) - &v, u.clone());
        prop_assert_eq!(&u * &v, &v * &u);
        if !v.is_zero() {
            prop_assert_eq!((&u * &v).div(&v).unwrap(), u.clone());
        }
        // canonical form: monic denominator, coprime parts
        prop_assert!(u.den().is_monic());
        prop_assert!(u.num().gcd(u.den()).is_one());
    }

    #[test]
    fn display_parse_round_trip(p in prime(), a in coeffs(6), b in coeffs(4)) {
        let u = RatFunc::new(poly(p, &a), nonzero(p, &b)).unwrap();
        let back = parse_ratfunc(&field(p), &u.to_string()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn product_formula_and_support(p in prime(), a in coeffs(7), b in coeffs(7)) {
        let u = RatFunc::new(nonzero(p, &a), nonzero(p, &b)).unwrap();
        prop_assert_eq!(product_formula_sum(&u).unwrap(), 0);
        let s: i64 = support(&u).unwrap().iter().map(|(pl, v)| pl.degree() as i64 * v).sum();
        prop_assert_eq!(s, 0);
    }

    #[test]
    fn t_integers_form_a_ring(a in coeffs(5), b in coeffs(5), i in 0u32..4, j in 0u32..4) {
        let f3 = field(3);
        let x = Poly::x(&f3);
        let t = PlaceSet::new(&f3, [Place::Infinity, Place::finite(x.clone()).unwrap()]);
        let u = RatFunc::new(poly(3, &a), x.pow(i as u64)).unwrap();
        let v = RatFunc::new(poly(3, &b), x.pow(j as u64)).unwrap();
        prop_assert!(t.is_t_integer(&u) && t.is_t_integer(&v));
        prop_assert!(t.is_t_integer(&(&u * &v)) && t.is_t_integer(&(&u - &v)));
        // x^{-1} is a T-unit, x + 1 is not
        prop_assert!(t.is_t_unit(&RatFunc::x(&f3).pow(-(i as i64) - 1).unwrap()));
        prop_assert!(!t.is_t_unit(&parse_ratfunc(&f3, "x+1").unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `disc(a s^{p^e} + b) = a^{d(d-1)} disc(s)^{p^e}`.
    #[test]
    fn discriminant_transformation(a in coeffs(3), b in coeffs(4), e in 0u32..3) {
        let f3 = field(3);
        let tw = Tower::from_text(&f3, &[("y", "y^3-y-x")]).unwrap();
        let s = AlgElem::gen(&tw, 0);
        let a = RatFunc::from_poly(nonzero(3, &a));
        let b = RatFunc::from_poly(poly(3, &b));
        let u = s.frobenius_power(e).scale(&a).add(&AlgElem::from_k(&tw, b));
        let lhs = u.discriminant().unwrap();
        let rhs = &a.pow(6).unwrap() * &s.discriminant().unwrap().pow(3i64.pow(e)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Translating by `O` and scaling by units of `O` preserves `O[s]`.
    #[test]
    fn order_invariant_under_affine_maps(b in coeffs(4), c in 1u64..3) {
        let f3 = field(3);
        let tw = Tower::from_text(&f3, &[("y", "y^3-y-x")]).unwrap();
        let s = AlgElem::gen(&tw, 0);
        let t = s.scale(&RatFunc::from_int(&f3, c as i64)).add(&AlgElem::from_k(&tw, RatFunc::from_poly(poly(3, &b))));
        prop_assert!(orders_equal(&s, &t, &BaseRing::Poly).is_equal());
        let o = MonOrder::new(&s, BaseRing::Poly).unwrap();
        let coords = o.express(&t).unwrap();
        prop_assert!(coords.iter().all(|a| a.is_poly()));
    }

    #[test]
    fn frobenius_power_is_pth_power(e in 0u32..3) {
        let f2 = field(2);
        let tw = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
        let s = AlgElem::parse(&tw, "x*y+y^2").unwrap();
        prop_assert!(s.frobenius_power(e) == s.pow(2u64.pow(e)));
    }

    #[test]
    fn bivariate_swap_is_an_involution(i in 0u32..4, j in 0u32..4, c in 1u64..7) {
        let f7 = field(7);
        let u = parse_bivar(&f7, &format!("{c}*x^{i}*y^{j}+x+3*y")).unwrap();
        prop_assert_eq!(u.swap().swap(), u.clone());
        let sym = &u + &u.swap();
        prop_assert!(sym.is_symmetric());
    }
}

#[test]
fn square_free_element_generates_a_proper_subring() {
    // O[x s] has index a power of x in O[s]; the orders differ
    let f3 = field(3);
    let tw = Tower::from_text(&f3, &[("y", "y^3-y-x")]).unwrap();
    let s = AlgElem::gen(&tw, 0);
    let t = s.scale(&RatFunc::x(&f3));
    assert!(!orders_equal(&s, &t, &BaseRing::Poly).is_equal());
    assert!(MonOrder::new(&s, BaseRing::Poly).unwrap().contains(&t));
}
