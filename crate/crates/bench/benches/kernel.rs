use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use planecolor_bench::{radical_point, radicals};
use planecolor_core::algebra::Real;
use planecolor_core::geometry::{circumcircle, intersect, line_through, Curve, Point};

fn sign(c: &mut Criterion) {
    let rs = radicals(12);
    // sqrt2 + sqrt3 - sqrt(5 + 2 sqrt6) is exactly zero: forces the exact path.
    let s6 = Real::int(6).sqrt().unwrap();
    let zero = &(&rs[0] + &rs[1]) - &(&Real::int(5) + &(&s6 * &Real::int(2))).sqrt().unwrap();
    let mixed = rs.iter().fold(Real::zero(), |acc, r| &acc + r) - Real::int(20);
    c.bench_function("sign/filtered", |b| b.iter(|| black_box(&mixed).signum()));
    c.bench_function("sign/exact_zero", |b| b.iter(|| black_box(&zero).signum()));
    c.bench_function("arith/nested_mul", |b| {
        b.iter(|| rs.iter().take(4).fold(Real::one(), |acc, r| &acc * black_box(r)))
    });
}

fn constructions(c: &mut Criterion) {
    let (p, q, r) = (Point::int(0, 0), Point::int(7, 1), Point::int(2, 5));
    c.bench_function("circumcircle/rational", |b| {
        b.iter(|| circumcircle(black_box(&p), black_box(&q), black_box(&r)).unwrap())
    });
    let (a, bb, d) = (radical_point(1), radical_point(3), radical_point(4));
    c.bench_function("circumcircle/radical", |b| {
        b.iter(|| circumcircle(black_box(&a), black_box(&bb), black_box(&d)))
    });
    let circ = Curve::Circle(circumcircle(&p, &q, &r).unwrap());
    let line = Curve::Line(line_through(&Point::int(-3, 1), &Point::int(9, 2)).unwrap());
    c.bench_function("intersect/line_circle", |b| {
        b.iter(|| intersect(black_box(&line), black_box(&circ)).unwrap())
    });
}

criterion_group!(benches, sign, constructions);
criterion_main!(benches);
