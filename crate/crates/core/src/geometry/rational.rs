//! Rational-coordinate fast path for the rule (1)/(2) constructions.
//!
//! Rationals are canonical, so curves with rational parameters can be hashed
//! exactly; only values carrying radicals need the [`ExactIndex`] path.
//!
//! [`ExactIndex`]: super::ExactIndex

use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Circle, Curve, Line, Point};
use crate::algebra::{Enclosure, Real};

/// A point with rational coordinates, also kept over a common denominator.
#[derive(Clone, Debug)]
pub struct RatPoint {
    pub x: BigRational,
    pub y: BigRational,
    xn: BigInt,
    yn: BigInt,
    w: BigInt,
}

impl RatPoint {
    pub fn new(x: BigRational, y: BigRational) -> RatPoint {
        let w = x.denom().lcm(y.denom());
        let xn = x.numer() * (&w / x.denom());
        let yn = y.numer() * (&w / y.denom());
        RatPoint { x, y, xn, yn, w }
    }

    /// The rational view of `p`, recovering rationals hidden behind
    /// radicals when their denominators fit in `max_den_bits`.
    pub fn from_point(p: &Point, max_den_bits: u64) -> Option<RatPoint> {
        Some(RatPoint::new(
            p.x.rational_value(max_den_bits)?,
            p.y.rational_value(max_den_bits)?,
        ))
    }

    pub fn to_point(&self) -> Point {
        Point::new(Real::from(self.x.clone()), Real::from(self.y.clone()))
    }

    pub fn den_bits(&self) -> u64 {
        self.w.bits()
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        hash_rat(&self.x, &mut h);
        hash_rat(&self.y, &mut h);
        h.finish()
    }

    pub fn equals(&self, p: &Point) -> bool {
        rat_eq(&self.x, &p.x) && rat_eq(&self.y, &p.y)
    }

    pub fn enclosure(&self) -> [Enclosure; 2] {
        [Enclosure::of_rational(&self.x), Enclosure::of_rational(&self.y)]
    }
}

impl PartialEq for RatPoint {
    fn eq(&self, o: &RatPoint) -> bool {
        self.x == o.x && self.y == o.y
    }
}

// `Ratio`'s own `Hash` expands a continued fraction; ours are always reduced,
// so hashing the parts is enough.
fn hash_rat(q: &BigRational, h: &mut impl Hasher) {
    q.numer().hash(h);
    q.denom().hash(h);
}

fn rat_eq(q: &BigRational, v: &Real) -> bool {
    match v.as_rational() {
        Some(r) => r == q,
        None => *v == Real::from(q.clone()),
    }
}

/// A line `(a, b, c)` or circle `(cx, cy, r2)` with rational parameters, in
/// the same canonical form as [`Curve`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RatCurve {
    Line([BigRational; 3]),
    Circle([BigRational; 3]),
}

impl RatCurve {
    pub fn from_curve(c: &Curve, max_den_bits: u64) -> Option<RatCurve> {
        let r = |v: &Real| v.rational_value(max_den_bits);
        Some(match c {
            Curve::Line(l) => RatCurve::Line([r(&l.a)?, r(&l.b)?, r(&l.c)?]),
            Curve::Circle(k) => RatCurve::Circle([r(&k.center.x)?, r(&k.center.y)?, r(&k.r2)?]),
        })
    }

    pub fn to_curve(&self) -> Curve {
        let r = |q: &BigRational| Real::from(q.clone());
        match self {
            RatCurve::Line([a, b, c]) => Curve::Line(Line {
                a: r(a),
                b: r(b),
                c: r(c),
            }),
            RatCurve::Circle([x, y, r2]) => Curve::Circle(Circle {
                center: Point::new(r(x), r(y)),
                r2: r(r2),
            }),
        }
    }

    fn params(&self) -> &[BigRational; 3] {
        match self {
            RatCurve::Line(p) | RatCurve::Circle(p) => p,
        }
    }

    pub fn tag(&self) -> u8 {
        match self {
            RatCurve::Line(_) => 0,
            RatCurve::Circle(_) => 1,
        }
    }

    pub fn den_bits(&self) -> u64 {
        self.params().iter().map(|q| q.denom().bits()).max().unwrap_or(0)
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.tag().hash(&mut h);
        for q in self.params() {
            hash_rat(q, &mut h);
        }
        h.finish()
    }

    pub fn enclosure(&self) -> [Enclosure; 3] {
        self.params().each_ref().map(Enclosure::of_rational)
    }

    /// Exact equality with a curve in any representation.
    pub fn equals(&self, c: &Curve) -> bool {
        match (self, c) {
            (RatCurve::Line([a, b, cc]), Curve::Line(l)) => {
                rat_eq(a, &l.a) && rat_eq(b, &l.b) && rat_eq(cc, &l.c)
            }
            (RatCurve::Circle([x, y, r2]), Curve::Circle(k)) => {
                rat_eq(x, &k.center.x) && rat_eq(y, &k.center.y) && rat_eq(r2, &k.r2)
            }
            _ => false,
        }
    }
}

fn canonical_line(a: BigRational, b: BigRational, c: BigRational) -> RatCurve {
    if !a.is_zero() {
        RatCurve::Line([BigRational::one(), b / &a, c / &a])
    } else {
        RatCurve::Line([BigRational::zero(), BigRational::one(), c / &b])
    }
}

/// Connecting line of two distinct points.
pub fn rat_line_through(p: &RatPoint, q: &RatPoint) -> RatCurve {
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = -(&a * &p.x + &b * &p.y);
    canonical_line(a, b, c)
}

/// Thales circle of two distinct points.
pub fn rat_thales(p: &RatPoint, q: &RatPoint) -> RatCurve {
    let two = BigInt::from(2);
    let cx = BigRational::new(&p.xn * &q.w + &q.xn * &p.w, &two * &p.w * &q.w);
    let cy = BigRational::new(&p.yn * &q.w + &q.yn * &p.w, &two * &p.w * &q.w);
    let dx = &p.xn * &q.w - &q.xn * &p.w;
    let dy = &p.yn * &q.w - &q.yn * &p.w;
    let den = BigInt::from(4) * (&p.w * &q.w) * (&p.w * &q.w);
    let r2 = BigRational::new(&dx * &dx + &dy * &dy, den);
    RatCurve::Circle([cx, cy, r2])
}

/// Circumcircle of three points, or `None` when they are collinear or not
/// pairwise distinct. Works over common denominators and reduces once.
pub fn rat_circumcircle(p: &RatPoint, q: &RatPoint, r: &RatPoint) -> Option<RatCurve> {
    let bxn = &q.xn * &p.w - &p.xn * &q.w;
    let byn = &q.yn * &p.w - &p.yn * &q.w;
    let cxn = &r.xn * &p.w - &p.xn * &r.w;
    let cyn = &r.yn * &p.w - &p.yn * &r.w;
    let det = &bxn * &cyn - &byn * &cxn;
    if det.is_zero() {
        return None;
    }
    let dq = &p.w * &q.w;
    let dr = &p.w * &r.w;
    let b2 = &bxn * &bxn + &byn * &byn;
    let c2 = &cxn * &cxn + &cyn * &cyn;
    // Offsets of the centre from p are nx/den and ny/den.
    let den = BigInt::from(2) * det * &dq * &dr;
    let nx = &cyn * &b2 * &dr - &byn * &c2 * &dq;
    let ny = &bxn * &c2 * &dq - &cxn * &b2 * &dr;
    let cden = &p.w * &den;
    let cx = BigRational::new(&p.xn * &den + &nx * &p.w, cden.clone());
    let cy = BigRational::new(&p.yn * &den + &ny * &p.w, cden);
    let r2 = BigRational::new(&nx * &nx + &ny * &ny, &den * &den);
    Some(RatCurve::Circle([cx, cy, r2]))
}
