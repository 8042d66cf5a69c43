//! Shared fixtures for the criterion benches.

use planecolor_core::algebra::Real;
use planecolor_core::geometry::Point;

/// `sqrt(k)` for `k` in `1..=n`, skipping perfect squares, so the values
/// live in nested quadratic extensions once combined.
pub fn radicals(n: i64) -> Vec<Real> {
    (1..=n)
        .filter(|k| {
            let r = (*k as f64).sqrt() as i64;
            r * r != *k
        })
        .map(|k| Real::int(k).sqrt().expect("positive"))
        .collect()
}

/// A point with coordinates in `Q(sqrt 2, sqrt 3)`.
pub fn radical_point(i: i64) -> Point {
    let s2 = Real::int(2).sqrt().expect("positive");
    let s3 = Real::int(3).sqrt().expect("positive");
    Point::new(&(&s2 * &Real::int(i)) + &Real::int(1), &(&s3 * &Real::int(i - 2)) - &s2)
}
