use super::*;
use crate::gf::FqCtx;
use crate::parse::parse_ratfunc;

fn k(f: &Fq, s: &str) -> RatFunc {
    parse_ratfunc(f, s).unwrap()
}

fn sqrt_x() -> Arc<Tower> {
    let f3 = FqCtx::prime(3).unwrap();
    Tower::from_text(&f3, &[("y", "y^2-x")]).unwrap()
}

#[test]
fn minpoly_of_shifted_root() {
    let t = sqrt_x();
    let f = t.field().clone();
    let e = AlgElem::parse(&t, "y+1").unwrap();
    let g = e.minimal_polynomial();
    // (Y-1)^2 = x
    assert_eq!(g.coeffs(), &[k(&f, "1-x"), k(&f, "-2"), k(&f, "1")]);
    assert_eq!(AlgElem::x(&t).minimal_polynomial().degree(), Some(1));
    assert_eq!(AlgElem::gen(&t, 0).discriminant().unwrap(), k(&f, "x"));
}

#[test]
fn conjugates_of_sqrt() {
    let t = sqrt_x();
    let f = t.field().clone();
    let sigma = GaloisMap::from_text(&t, &[("y", "-y")]).unwrap();
    let y = AlgElem::gen(&t, 0);
    let c = conjugates(&y, std::slice::from_ref(&sigma)).unwrap();
    assert_eq!(c.elems()[1], y.neg());
    assert_eq!(c.elems()[0].mul(&c.elems()[1]).as_k(), Some(&k(&f, "-x")));
    assert_eq!(c.squared_difference_product().as_k(), Some(&y.discriminant().unwrap()));
    assert!(GaloisMap::from_text(&t, &[("y", "y+1")]).is_err());
    assert!(conjugates(&y, &[]).is_err());
    assert!(conjugates(&y, &[GaloisMap::identity(&t)]).is_err());
    let u = conjugate_difference_unit(&c, &c, 0, 1).unwrap();
    assert!(u.is_one());
}

#[test]
fn counterexample_tower_discriminant() {
    let f2 = FqCtx::prime(2).unwrap();
    let t = Tower::from_text(&f2, &[("s", "s^4+x^4*s^2+x^3*s+x+1")]).unwrap();
    assert!(t.is_certified(), "{:?}", t.status());
    let s = AlgElem::gen(&t, 0);
    let x12 = k(&f2, "x^12");
    assert_eq!(s.discriminant().unwrap(), x12);
    assert_eq!(s.discriminant_by_norm().unwrap(), x12);
    // z_1 = (s^4 + eta)/x^3 = x s^2 + s
    let z1 = s.pow(4).add(&AlgElem::from_k(&t, k(&f2, "x+1"))).scale(&k(&f2, "1/x^3"));
    assert_eq!(z1, AlgElem::parse(&t, "x*s^2+s").unwrap());
}

#[test]
fn first_example_tower() {
    let f2 = FqCtx::prime(2).unwrap();
    let t = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
    assert!(t.is_certified());
    let y = AlgElem::gen(&t, 0);
    assert_eq!(y.discriminant().unwrap(), RatFunc::one(&f2));
    let s = y.scale(&RatFunc::x(&f2));
    assert_eq!(s.discriminant().unwrap(), k(&f2, "x^12"));
    let s4 = s.frobenius_power(2);
    assert_eq!(s4, s.pow(4));
    assert_eq!(s4, AlgElem::parse(&t, "x^4*(x^2*y^2+y+1)").unwrap());
    assert_eq!(s.frobenius_power(0), s);
    assert_eq!(AlgElem::x(&t).frobenius_power(1), AlgElem::parse(&t, "x^2").unwrap());
}

#[test]
fn rejects_bad_definitions() {
    let f3 = FqCtx::prime(3).unwrap();
    let f2 = FqCtx::prime(2).unwrap();
    assert!(matches!(Tower::from_text(&f3, &[("y", "2*y^2+x")]), Err(Error::NotMonic(_))));
    assert!(matches!(Tower::from_text(&f2, &[("y", "y^2+x")]), Err(Error::Inseparable(_))));
    assert!(matches!(Tower::from_text(&f3, &[("y", "y^2-x^2")]), Err(Error::NotIrreducible(_))));
    assert!(Tower::from_text(&f3, &[("x", "x^2-2")]).is_err());
    assert!(Tower::from_text(&f3, &[("y", "y^2-x"), ("y", "y^2-x-1")]).is_err());
}

#[test]
fn biquadratic_tower() {
    let f3 = FqCtx::prime(3).unwrap();
    let t = Tower::from_text(&f3, &[("y", "y^2-x"), ("w", "w^2-x-1")]).unwrap();
    assert_eq!(t.degree(), 4);
    assert!(t.is_certified(), "{:?}", t.status());
    let s1 = GaloisMap::from_text(&t, &[("y", "-y"), ("w", "w")]).unwrap();
    let s2 = GaloisMap::from_text(&t, &[("y", "y"), ("w", "-w")]).unwrap();
    let s3 = s1.compose(&s2);
    assert!(s1.compose(&s1).is_identity());
    let th = AlgElem::parse(&t, "y+w").unwrap();
    assert_eq!(th.degree(), 4);
    let c = conjugates(&th, &[s1.clone(), s2, s3]).unwrap();
    let d = th.discriminant().unwrap();
    assert_eq!(c.squared_difference_product().as_k(), Some(&d));
    assert_eq!(th.discriminant_by_norm().unwrap(), d);
    assert_eq!(s1.apply(&th).minimal_polynomial(), th.minimal_polynomial());
    let inv = th.inv().unwrap();
    assert!(inv.mul(&th).is_one());
    let y = AlgElem::gen(&t.truncated(1), 0);
    assert_eq!(y.lift(&t).unwrap(), AlgElem::gen(&t, 0));
}

#[test]
fn text_round_trip() {
    let f4 = FqCtx::builtin(2, 2).unwrap();
    let t = Tower::from_text(&f4, &[("y", "y^3+x*y+z")]).unwrap();
    for s in ["0", "1", "z*y^2+(x+1)/x*y+x", "y^2/(x^2+z)", "(x+z)*y"] {
        let e = AlgElem::parse(&t, s).unwrap();
        assert_eq!(AlgElem::parse(&t, &e.to_string()).unwrap(), e, "{s} -> {e}");
    }
    assert_eq!(t.defining_text(0), "y^3+x*y+z");
}
