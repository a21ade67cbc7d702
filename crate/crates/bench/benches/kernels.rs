use criterion::{criterion_group, criterion_main, Criterion};
use num::BigInt;
use std::hint::black_box;

use aodebound_core::algebra::qpoly::det_zpoly;
use aodebound_core::curve::resolve::resolve;
use aodebound_core::heights::height_point;
use aodebound_core::text::{parse_poly, parse_ratfunc_list};
use aodebound_core::{find_rational_solutions, DiffPoly, ProjPoly, UniPoly};

fn solver(c: &mut Criterion) {
    let f = DiffPoly::parse("2*y' + t*y^3 + y^2").unwrap();
    c.bench_function("solve planted cap 2", |b| {
        b.iter(|| find_rational_solutions(black_box(&f), 2).unwrap())
    });
    let g = DiffPoly::parse("y*y' + y^3 + t").unwrap();
    c.bench_function("solve y y' + y^3 + t cap 4", |b| {
        b.iter(|| find_rational_solutions(black_box(&g), 4).unwrap())
    });
}

fn determinant(c: &mut Criterion) {
    let n = 8;
    let entries: Vec<Vec<BigInt>> = (0..n * n)
        .map(|k| {
            (0..4)
                .map(|j| BigInt::from((k * 7 + j * 13) as i64 % 23 - 11))
                .collect()
        })
        .collect();
    let idx: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| i * n + j).collect())
        .collect();
    c.bench_function("det over Z[c], 8x8 cubic entries", |b| {
        b.iter(|| det_zpoly(black_box(&entries), &idx))
    });
}

fn gcd(c: &mut Criterion) {
    let a: UniPoly = UniPoly::from_ints(&(0..40).map(|i| (i * 5 % 17) - 8).collect::<Vec<_>>());
    let b: UniPoly = UniPoly::from_ints(&(0..35).map(|i| (i * 3 % 11) - 5).collect::<Vec<_>>());
    let k: UniPoly = UniPoly::from_ints(&[3, -1, 4, 1, -5, 9, 2]);
    let (x, y) = (&a * &k, &b * &k);
    c.bench_function("modular gcd, degree 45", |bn| {
        bn.iter(|| black_box(&x).gcd(black_box(&y)))
    });
}

fn heights(c: &mut Criterion) {
    let p = parse_ratfunc_list("t^3 + 1, (t^2 - 1)/(t + 2), t^5 - 3*t").unwrap();
    c.bench_function("height of a point", |b| {
        b.iter(|| height_point(black_box(&p)).unwrap())
    });
}

fn resolution(c: &mut Criterion) {
    let cusp = ProjPoly::new(parse_poly("x1^2*x2 - x0^3", &["x0", "x1", "x2"]).unwrap()).unwrap();
    c.bench_function("resolve cusp", |b| {
        b.iter(|| resolve(black_box(&cusp), 8, 0).unwrap())
    });
    let tacnode =
        ProjPoly::new(parse_poly("x1^2*x2^2 - x0^4", &["x0", "x1", "x2"]).unwrap()).unwrap();
    c.bench_function("resolve tacnode", |b| {
        b.iter(|| resolve(black_box(&tacnode), 8, 0).unwrap())
    });
}

criterion_group!(benches, solver, determinant, gcd, heights, resolution);
criterion_main!(benches);
