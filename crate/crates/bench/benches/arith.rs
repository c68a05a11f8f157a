use criterion::{black_box, criterion_group, criterion_main, Criterion};

use monogen_core::frobsearch::{enumerate_m, SymPair};
use monogen_core::funcfield::factor;
use monogen_core::monorder::{orders_equal, BaseRing};
use monogen_core::parse::{parse_bivar, parse_poly, parse_ratfunc};
use monogen_core::tower::{AlgElem, Tower};
use monogen_core::unitgrp::{build_group, solve_xy1};
use monogen_core::verify::verify_section_3_3;
use monogen_core::FqCtx;

fn field_arith(c: &mut Criterion) {
    let f7 = FqCtx::prime(7).unwrap();
    let a = parse_poly(&f7, "(x^3+2*x+1)^5*(x^2+1)^3").unwrap();
    c.bench_function("factor degree 21 over F_7", |b| b.iter(|| factor(black_box(&a)).unwrap()));
    let u = parse_ratfunc(&f7, "(x^5+3*x+1)/(x^4+x^2+2)").unwrap();
    let v = parse_ratfunc(&f7, "(x^3+1)/(x^7+5*x+6)").unwrap();
    c.bench_function("ratfunc mul+add over F_7", |b| b.iter(|| &(&u * &v) + black_box(&u)));
}

fn tower_arith(c: &mut Criterion) {
    let f2 = FqCtx::prime(2).unwrap();
    let tw = Tower::from_text(&f2, &[("y", "y^4+x^2*y^2+y+1")]).unwrap();
    let s = AlgElem::parse(&tw, "x*y").unwrap();
    let t = AlgElem::parse(&tw, "x*y^16").unwrap();
    c.bench_function("discriminant in a quartic tower", |b| b.iter(|| black_box(&t).discriminant().unwrap()));
    c.bench_function("orders_equal in a quartic tower", |b| {
        b.iter(|| orders_equal(&s, black_box(&t), &BaseRing::Poly))
    });
    let eta = parse_poly(&f2, "x+1").unwrap();
    c.bench_function("counterexample suite, m <= 3", |b| b.iter(|| verify_section_3_3(black_box(&eta), 3).unwrap()));
}

fn searches(c: &mut Criterion) {
    let f7 = FqCtx::prime(7).unwrap();
    let s = parse_bivar(&f7, "x").unwrap();
    let t = parse_bivar(&f7, "3*x+2*y").unwrap();
    let pair = SymPair::new(&s, &t, 30, 30).unwrap();
    c.bench_function("symmetric search 30x30", |b| b.iter(|| enumerate_m(black_box(&pair), 30, 30).unwrap()));
    let f2 = FqCtx::prime(2).unwrap();
    let g = build_group(&f2, &[parse_ratfunc(&f2, "x").unwrap(), parse_ratfunc(&f2, "1-x").unwrap()]).unwrap();
    c.bench_function("x + y = 1 in <x, 1-x> over F_2", |b| b.iter(|| solve_xy1(black_box(&g), 8).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = field_arith, tower_arith, searches
}
criterion_main!(benches);
