//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use planecolor_core::algebra::{BigInt, BigRational, Enclosure, Real};
use planecolor_core::closure::LevelRegistry;
use planecolor_core::coloring::{Color, ColorState};
use planecolor_core::geometry::{on_curve, Curve, Point};
use proptest::prelude::*;

/// Expression trees over small rationals. `Sqrt` takes the root of the
/// absolute value so every tree denotes a real number.
#[derive(Debug, Clone)]
pub enum Expr {
    Lit(i64, i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Expr::Lit(n, d));
    leaf.prop_recursive(6, 20, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(a.into(), b.into())),
            inner.prop_map(|a| Expr::Sqrt(a.into())),
        ]
    })
}

/// Exact value; `None` on division by zero.
pub fn eval(e: &Expr) -> Option<Real> {
    Some(match e {
        Expr::Lit(n, d) => Real::from_rational(*n, *d).unwrap(),
        Expr::Add(a, b) => &eval(a)? + &eval(b)?,
        Expr::Sub(a, b) => &eval(a)? - &eval(b)?,
        Expr::Mul(a, b) => &eval(a)? * &eval(b)?,
        Expr::Div(a, b) => eval(a)?.checked_div(&eval(b)?).ok()?,
        Expr::Sqrt(a) => eval(a)?.abs().sqrt().unwrap(),
    })
}

/// Closed rational interval evaluated bottom-up on the tree, with endpoints
/// rounded outward to multiples of 2^-PREC.
#[derive(Debug, Clone)]
pub struct Iv {
    pub lo: BigRational,
    pub hi: BigRational,
}

const PREC: u32 = 200;

fn scale() -> BigInt {
    BigInt::from(1) << PREC
}

fn down(q: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((q * BigRational::from(s.clone())).floor().to_integer(), s)
}

fn up(q: &BigRational) -> BigRational {
    let s = scale();
    BigRational::new((q * BigRational::from(s.clone())).ceil().to_integer(), s)
}

impl Iv {
    fn new(lo: BigRational, hi: BigRational) -> Iv {
        Iv { lo: down(&lo), hi: up(&hi) }
    }

    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Iv::new(lo, hi)
    }

    fn abs(&self) -> Iv {
        match self.sign() {
            Some(s) if s >= 0 => self.clone(),
            Some(_) => Iv::new(-self.hi.clone(), -self.lo.clone()),
            None => Iv::new(BigRational::zero(), self.hi.clone().max(-self.lo.clone())),
        }
    }

    /// For a nonnegative interval.
    fn sqrt(&self) -> Iv {
        let s2 = BigRational::from(scale() * scale());
        let lo = (&self.lo * &s2).floor().to_integer().sqrt();
        let hi = (&self.hi * &s2).ceil().to_integer().sqrt() + 1;
        Iv { lo: BigRational::new(lo, scale()), hi: BigRational::new(hi, scale()) }
    }
}

/// Interval oracle; `None` when a divisor interval straddles zero.
pub fn eval_iv(e: &Expr) -> Option<Iv> {
    Some(match e {
        Expr::Lit(n, d) => {
            let q = BigRational::new((*n).into(), (*d).into());
            Iv { lo: q.clone(), hi: q }
        }
        Expr::Add(a, b) => {
            let (a, b) = (eval_iv(a)?, eval_iv(b)?);
            Iv::new(&a.lo + &b.lo, &a.hi + &b.hi)
        }
        Expr::Sub(a, b) => {
            let (a, b) = (eval_iv(a)?, eval_iv(b)?);
            Iv::new(&a.lo - &b.hi, &a.hi - &b.lo)
        }
        Expr::Mul(a, b) => eval_iv(a)?.mul(&eval_iv(b)?),
        Expr::Div(a, b) => {
            let (a, b) = (eval_iv(a)?, eval_iv(b)?);
            if b.sign().is_none_or(|s| s == 0) {
                return None;
            }
            a.mul(&Iv::new(b.hi.recip(), b.lo.recip()))
        }
        Expr::Sqrt(a) => eval_iv(a)?.abs().sqrt(),
    })
}

/// Rational points with small numerators and denominators.
pub fn rat_point() -> impl Strategy<Value = Point> {
    (-12i64..=12, 1i64..=4, -12i64..=12, 1i64..=4)
        .prop_map(|(a, b, c, d)| Point::new(Real::from_rational(a, b).unwrap(), Real::from_rational(c, d).unwrap()))
}

/// Points with coordinates in `Q(sqrt 2)` or `Q(sqrt 3)`.
pub fn radical_point() -> impl Strategy<Value = Point> {
    (rat_point(), -3i64..=3, -3i64..=3, prop::sample::select(vec![2i64, 3])).prop_map(|(p, u, v, d)| {
        let r = Real::int(d).sqrt().unwrap();
        Point::new(&p.x + &(&r * &Real::int(u)), &p.y + &(&r * &Real::int(v)))
    })
}

pub fn any_point() -> impl Strategy<Value = Point> {
    prop_oneof![3 => rat_point(), 1 => radical_point()]
}

/// How a palette was recomputed from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recomputed {
    Full,
    Complement(BTreeSet<Color>),
}

/// Incidence test with an outward-rounded interval prefilter; the exact
/// check runs only when the enclosure of the defining equation meets zero.
fn incident(p: &Point, pe: &[Enclosure; 2], e: &Curve, key: &(u8, [Enclosure; 3])) -> bool {
    let [u, v, w] = &key.1;
    let val = if key.0 == 0 {
        u.mul(&pe[0]).add(&v.mul(&pe[1])).add(w)
    } else {
        let dx = pe[0].add(&u.neg());
        let dy = pe[1].add(&v.neg());
        dx.mul(&dx).add(&dy.mul(&dy)).add(&w.neg())
    };
    matches!(val.sign(), None | Some(0)) && on_curve(p, e)
}

/// Recomputes the palette law for every curve from geometric incidence
/// over all points (not the registry's bookkeeping) and returns the ids
/// whose stored complement differs.
pub fn palette_mismatches(state: &ColorState, reg: &LevelRegistry) -> Vec<usize> {
    let mut bad = Vec::new();
    let encl: Vec<[Enclosure; 2]> = reg.points().iter().map(|p| p.point.enclosure()).collect();
    for (id, rec) in reg.curves().iter().enumerate() {
        let Some(birth) = rec.birth else { continue };
        let key = rec.curve.key();
        let mut older = Vec::new();
        let mut batch = BTreeSet::new();
        for (pid, p) in reg.points().iter().enumerate() {
            if p.level > birth || !incident(&p.point, &encl[pid], &rec.curve, &key) {
                continue;
            }
            let col = state.color(pid as u32).expect("total coloring");
            if p.level < birth {
                older.push(col);
            } else {
                batch.insert(col);
            }
        }
        let want = if rec.curve.is_line() {
            match older.as_slice() {
                [y] if batch.contains(y) => Recomputed::Complement(batch.iter().copied().filter(|c| c != y).collect()),
                _ => Recomputed::Complement(older.iter().copied().chain(batch.iter().copied()).collect()),
            }
        } else {
            match older.as_slice() {
                [a, b] if a == b => Recomputed::Full,
                _ => Recomputed::Complement(older.iter().copied().collect()),
            }
        };
        let got = state.palette(id as u32).expect("every committed curve has a palette");
        let got_set: BTreeSet<Color> = got.complement().iter().copied().collect();
        let ok = match &want {
            Recomputed::Full => got.is_full(),
            Recomputed::Complement(s) => *s == got_set && got.complement().len() == s.len(),
        };
        if !ok {
            bad.push(id);
        }
    }
    bad
}
