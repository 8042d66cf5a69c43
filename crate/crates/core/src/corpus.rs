//! Deterministic stress inputs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Real;
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusSpec {
    Grid { n: u32 },
    RandomRational { n: u32, seed: u64, denom_bound: u32 },
    CircleRich { n: u32, seed: u64 },
    /// `grid(n)` followed by `m` rational points of the unit circle.
    GridCircle { n: u32, m: u32 },
}

impl CorpusSpec {
    pub fn generate(&self) -> Vec<Point> {
        match *self {
            CorpusSpec::Grid { n } => grid(n),
            CorpusSpec::RandomRational { n, seed, denom_bound } => random_rational(n, seed, denom_bound),
            CorpusSpec::CircleRich { n, seed } => circle_rich(n, seed),
            CorpusSpec::GridCircle { n, m } => {
                let mut v = grid(n);
                v.extend(unit_circle_points(m as usize));
                v
            }
        }
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CorpusSpec::Grid { n } => write!(f, "grid:{n}"),
            CorpusSpec::RandomRational { n, seed, denom_bound } => write!(f, "random:{n}:{seed}:{denom_bound}"),
            CorpusSpec::CircleRich { n, seed } => write!(f, "circle:{n}:{seed}"),
            CorpusSpec::GridCircle { n, m } => write!(f, "gridcircle:{n}:{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad corpus spec `{0}` (expected grid:N, random:N:SEED:DENOM, circle:N:SEED or gridcircle:N:M)")]
pub struct BadCorpusSpec(pub String);

impl FromStr for CorpusSpec {
    type Err = BadCorpusSpec;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadCorpusSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u64, BadCorpusSpec> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let small = |i: usize| -> Result<u32, BadCorpusSpec> {
            num(i).and_then(|v| u32::try_from(v).ok().filter(|&v| v > 0).ok_or_else(bad))
        };
        let spec = match (parts[0], parts.len()) {
            ("grid", 2) => CorpusSpec::Grid { n: small(1)? },
            ("random", 4) => CorpusSpec::RandomRational {
                n: small(1)?,
                seed: num(2)?,
                denom_bound: small(3)?,
            },
            ("circle", 3) => CorpusSpec::CircleRich {
                n: small(1)?,
                seed: num(2)?,
            },
            ("gridcircle", 3) => CorpusSpec::GridCircle {
                n: small(1)?,
                m: small(2)?,
            },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// The `n × n` lattice `{0..n}²`, x-major.
pub fn grid(n: u32) -> Vec<Point> {
    let n = n as i64;
    (0..n).flat_map(|x| (0..n).map(move |y| Point::int(x, y))).collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` distinct points in `[0, 4]²` with coordinates `k/q`, `q ≤ denom_bound`.
pub fn random_rational(n: u32, seed: u64, denom_bound: u32) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = denom_bound.max(1) as i64;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n as usize);
    // The pool of candidate points is finite; stop if it runs dry.
    let mut attempts = 0usize;
    while out.len() < n as usize && attempts < 1000 * n as usize + 1000 {
        attempts += 1;
        let mut coord = || {
            let q = rng.random_range(1..=bound);
            rat(rng.random_range(0..=4 * q), q)
        };
        let (x, y) = (coord(), coord());
        if seen.insert((x.clone(), y.clone())) {
            out.push(Point::new(Real::from(x), Real::from(y)));
        }
    }
    out
}

/// Primitive Pythagorean pairs `(a, b, c)`, `a² + b² = c²`, from the
/// parameters `t = s/r` in order of `r` then `s`.
fn pythagorean() -> impl Iterator<Item = (i64, i64, i64)> {
    (2i64..).flat_map(|r| {
        (1..r)
            .filter(move |&s| num_integer::gcd(r, s) == 1 && (r - s) % 2 == 1)
            .map(move |s| (r * r - s * s, 2 * r * s, r * r + s * s))
    })
}

/// Rational points of the unit circle: for each Pythagorean triple the eight
/// sign/swap variants, starting `(3/5, 4/5), (−3/5, 4/5), …`.
pub fn unit_circle_points(m: usize) -> Vec<Point> {
    pythagorean()
        .flat_map(|(a, b, c)| {
            [(a, b), (-a, b), (a, -b), (-a, -b), (b, a), (-b, a), (b, -a), (-b, -a)]
                .map(|(x, y)| (rat(x, c), rat(y, c)))
        })
        .take(m)
        .map(|(x, y)| Point::new(Real::from(x), Real::from(y)))
        .collect()
}

/// `n` points on circles: the unit circle first, then circles with seeded
/// rational centres and integer radii, eight Pythagorean points each.
pub fn circle_rich(n: u32, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n as usize);
    let mut circle = 0;
    while out.len() < n as usize {
        let (cx, cy, r) = if circle == 0 {
            (rat(0, 1), rat(0, 1), 1)
        } else {
            let q = rng.random_range(1..=4i64);
            (
                rat(rng.random_range(-4 * q..=4 * q), q),
                rat(rng.random_range(-4 * q..=4 * q), q),
                rng.random_range(1..=3i64),
            )
        };
        for p in unit_circle_points(8 * (circle % 3 + 1)).into_iter().skip(8 * (circle % 3)) {
            let x = &cx + p.x.as_rational().unwrap() * BigRational::from_integer(r.into());
            let y = &cy + p.y.as_rational().unwrap() * BigRational::from_integer(r.into());
            if out.len() < n as usize && seen.insert((x.clone(), y.clone())) {
                out.push(Point::new(Real::from(x), Real::from(y)));
            }
        }
        circle += 1;
    }
    out
}
