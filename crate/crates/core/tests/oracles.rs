//! Fixed values computed by hand or by an independent method.

use monogen_core::frobsearch::{enumerate_m, fit_patterns, validate, SymPair, TowerPair};
use monogen_core::monorder::{fit_generator_relation, BaseRing};
use monogen_core::parse::{parse_bivar, parse_poly, parse_ratfunc};
use monogen_core::tower::{AlgElem, Tower};
use monogen_core::unitgrp::{brute_force_xy1, build_group, solve_xy1};
use monogen_core::verify::{verify_section_3_3, EtaSequence};
use monogen_core::{FqCtx, RatFunc};

#[test]
fn quadratic_discriminants() {
    // y^2 = x over F_3: disc = 4x = x
    let f3 = FqCtx::prime(3).unwrap();
    let tw = Tower::from_text(&f3, &[("y", "y^2-x")]).unwrap();
    let y = AlgElem::gen(&tw, 0);
    assert_eq!(y.discriminant().unwrap(), parse_ratfunc(&f3, "x").unwrap());
    assert_eq!(y.discriminant_by_norm().unwrap(), y.discriminant().unwrap());
    // y + x has the same discriminant, x y picks up x^2
    let t = AlgElem::parse(&tw, "y+x").unwrap();
    assert_eq!(t.discriminant().unwrap(), y.discriminant().unwrap());
    let u = AlgElem::parse(&tw, "x*y").unwrap();
    assert_eq!(u.discriminant().unwrap().to_string(), "x^3");
}

#[test]
fn artin_schreier_discriminant() {
    // y^3 - y - x: disc = -4(-1)^3 - 27 x^2 = 4 = 1 in F_3
    let f3 = FqCtx::prime(3).unwrap();
    let tw = Tower::from_text(&f3, &[("y", "y^3-y-x")]).unwrap();
    assert!(tw.is_certified());
    assert_eq!(AlgElem::gen(&tw, 0).discriminant().unwrap(), RatFunc::one(&f3));
}

#[test]
fn non_monic_tower_is_rejected() {
    let f2 = FqCtx::prime(2).unwrap();
    assert!(Tower::from_text(&f2, &[("y", "x*y^2+1")]).is_err());
}

#[test]
fn eta_recursion_by_hand() {
    // eta_2 = eta^4 + x^12 eta + x^16 eta^2 with eta = x + 1
    let f2 = FqCtx::prime(2).unwrap();
    let eta = parse_poly(&f2, "x+1").unwrap();
    let e = EtaSequence::new(&eta, 2).unwrap();
    let want = parse_poly(&f2, "(x+1)^4+x^12*(x+1)+x^16*(x+1)^2").unwrap();
    assert_eq!(e.term(2), &want);
}

#[test]
fn other_seeds_also_verify() {
    let f2 = FqCtx::prime(2).unwrap();
    for seed in ["x^2+x+1", "x^3+x+1"] {
        let eta = parse_poly(&f2, seed).unwrap();
        let rep = verify_section_3_3(&eta, 2).unwrap();
        assert!(rep.passed(), "{seed}: {rep}");
    }
}

#[test]
fn generator_relation_for_frobenius_twist() {
    // t = x s^2 + 1 relates back to s with a = x, b = 1, q = 2
    let f2 = FqCtx::prime(2).unwrap();
    let tw = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
    let s = AlgElem::parse(&tw, "x*y").unwrap();
    let t = AlgElem::parse(&tw, "x*(x*y)^2+1").unwrap();
    let rel = fit_generator_relation(&t, &s, 4, &BaseRing::Poly).unwrap().unwrap();
    assert_eq!((rel.q, rel.a.to_string(), rel.b.to_string()), (2, "x".into(), "1".into()));
    assert!(rel.b_in_ring);
}

#[test]
fn unit_solver_matches_oracle_on_more_groups() {
    let cases = [(2, vec!["x", "x+1", "x^2+x+1"]), (3, vec!["x", "x+1", "x+2"]), (5, vec!["x", "1-x"])];
    for (p, gens) in cases {
        let fp = FqCtx::prime(p).unwrap();
        let g: Vec<RatFunc> = gens.iter().map(|s| parse_ratfunc(&fp, s).unwrap()).collect();
        let grp = build_group(&fp, &g).unwrap();
        let rep = solve_xy1(&grp, 8).unwrap();
        let mut union: Vec<_> = rep.families.iter().flat_map(|f| f.members_within(3)).collect();
        union.sort();
        union.dedup();
        assert_eq!(union, brute_force_xy1(&grp, 3).unwrap(), "F_{p} {gens:?}");
    }
}

#[test]
fn symmetric_search_box() {
    let f7 = FqCtx::prime(7).unwrap();
    let s = parse_bivar(&f7, "x").unwrap();
    let t = parse_bivar(&f7, "3*x+2*y").unwrap();
    let b = SymPair::new(&s, &t, 60, 60).unwrap();
    let r = enumerate_m(&b, 60, 60).unwrap();
    let want = [1, 2, 7, 8, 14, 49, 50, 56].map(|m| (m, m));
    assert_eq!(r.pair_set().into_iter().collect::<Vec<_>>(), want);
    let fitted = fit_patterns(&r.pair_set(), 7, (60, 60));
    let texts: Vec<&str> = fitted.iter().map(|f| f.text.as_str()).collect();
    assert_eq!(texts, ["F(7; 1, 1, 1, 1)", "F1(7; (1, 1))"]);
    assert!(validate(&fitted, &r.pair_set(), (60, 60)));
}

#[test]
fn tower_search_is_the_frobenius_orbit() {
    let f2 = FqCtx::prime(2).unwrap();
    let tw = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
    let s = AlgElem::parse(&tw, "x*y").unwrap();
    let t = AlgElem::parse(&tw, "x*y^4").unwrap();
    let b = TowerPair::new(&s, &t, BaseRing::Poly, 20, 20).unwrap();
    let r = enumerate_m(&b, 20, 20).unwrap();
    assert_eq!(r.pair_set().into_iter().collect::<Vec<_>>(), [(1, 1), (2, 2), (4, 4), (8, 8), (16, 16)]);
    assert!(r.closure_violations.is_empty());
}

#[test]
fn reports_serialise() {
    let f2 = FqCtx::prime(2).unwrap();
    let rep = verify_section_3_3(&parse_poly(&f2, "x+1").unwrap(), 1).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["suite"], "counterexample");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
