//! Exact points, lines and circles with the constructions used by the closure.

mod index;
pub mod rational;
mod table;

use std::fmt;

use crate::algebra::{AlgebraError, Enclosure, Real};

pub use index::ExactIndex;
pub use rational::{RatCurve, RatPoint};
pub use table::{CurveTable, PointTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("identical curves have infinitely many common points")]
    IdenticalCurves,
    #[error("point is not on the curve")]
    NotIncident,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    pub x: Real,
    pub y: Real,
}

impl Point {
    pub fn new(x: Real, y: Real) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point::new(Real::int(x), Real::int(y))
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational_repr() && self.y.is_rational_repr()
    }

    pub fn enclosure(&self) -> [Enclosure; 2] {
        [self.x.enclosure(), self.y.enclosure()]
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    fn sub(&self, o: &Point) -> (Real, Real) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The line `a·x + b·y + c = 0`, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Line {
    pub a: Real,
    pub b: Real,
    pub c: Real,
}

impl Line {
    pub fn new(a: Real, b: Real, c: Real) -> Result<Line> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(GeometryError::Degenerate("line with zero normal"));
        };
        let inv = lead.inv()?;
        let scale = |v: &Real| if v.is_zero() { Real::zero() } else { v * &inv };
        let (a, b, c) = if a.is_zero() {
            (Real::zero(), Real::one(), scale(&c))
        } else {
            (Real::one(), scale(&b), scale(&c))
        };
        Ok(Line { a, b, c })
    }

    pub fn eval(&self, p: &Point) -> Real {
        &(&(&self.a * &p.x) + &(&self.b * &p.y)) + &self.c
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({}, {}, {})", self.a, self.b, self.c)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Circle {
    pub center: Point,
    pub r2: Real,
}

impl Circle {
    pub fn new(center: Point, r2: Real) -> Result<Circle> {
        if r2.signum() <= 0 {
            return Err(GeometryError::Degenerate("circle radius must be positive"));
        }
        Ok(Circle { center, r2 })
    }

    pub fn eval(&self, p: &Point) -> Real {
        let (dx, dy) = p.sub(&self.center);
        &(&dx.square() + &dy.square()) - &self.r2
    }
}

impl fmt::Debug for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circle({}, r2 = {})", self.center, self.r2)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum Curve {
    Line(Line),
    Circle(Circle),
}

impl Curve {
    pub fn is_line(&self) -> bool {
        matches!(self, Curve::Line(_))
    }

    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            Curve::Circle(c) => Some(c),
            Curve::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&Line> {
        match self {
            Curve::Line(l) => Some(l),
            Curve::Circle(_) => None,
        }
    }

    /// Index key: a variant tag and three coordinates.
    pub fn key(&self) -> (u8, [Enclosure; 3]) {
        match self {
            Curve::Line(l) => (0, [l.a.enclosure(), l.b.enclosure(), l.c.enclosure()]),
            Curve::Circle(c) => (
                1,
                [c.center.x.enclosure(), c.center.y.enclosure(), c.r2.enclosure()],
            ),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Line(l) => l.fmt(f),
            Curve::Circle(c) => c.fmt(f),
        }
    }
}

impl From<Line> for Curve {
    fn from(l: Line) -> Curve {
        Curve::Line(l)
    }
}

impl From<Circle> for Curve {
    fn from(c: Circle) -> Curve {
        Curve::Circle(c)
    }
}

fn two() -> Real {
    Real::int(2)
}

fn half(v: &Real) -> Real {
    v * &Real::from_rational(1, 2).unwrap()
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(GeometryError::Degenerate("line through a single point"));
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = -(&(&a * &p.x) + &(&b * &p.y));
    Line::new(a, b, c)
}

pub fn thales_circle(p: &Point, q: &Point) -> Result<Circle> {
    if p == q {
        return Err(GeometryError::Degenerate("diameter of zero length"));
    }
    let center = Point::new(half(&(&p.x + &q.x)), half(&(&p.y + &q.y)));
    let (dx, dy) = p.sub(q);
    let r2 = &(&dx.square() + &dy.square()) * &Real::from_rational(1, 4).unwrap();
    Circle::new(center, r2)
}

pub fn circumcircle(p: &Point, q: &Point, r: &Point) -> Result<Circle> {
    let (bx, by) = q.sub(p);
    let (cx, cy) = r.sub(p);
    let d = &two() * &(&(&bx * &cy) - &(&by * &cx));
    if d.is_zero() {
        return Err(GeometryError::Degenerate("collinear or coincident points"));
    }
    let b2 = &bx.square() + &by.square();
    let c2 = &cx.square() + &cy.square();
    let inv = d.inv()?;
    let ux = &(&(&cy * &b2) - &(&by * &c2)) * &inv;
    let uy = &(&(&bx * &c2) - &(&cx * &b2)) * &inv;
    let r2 = &ux.square() + &uy.square();
    Circle::new(Point::new(&p.x + &ux, &p.y + &uy), r2)
}

pub fn perpendicular_at(l: &Line, x: &Point) -> Result<Line> {
    if !l.eval(x).is_zero() {
        return Err(GeometryError::NotIncident);
    }
    let c = -(&(&l.b * &x.x) - &(&l.a * &x.y));
    Line::new(l.b.clone(), -&l.a, c)
}

pub fn antipode(x: &Point, c: &Circle) -> Result<Point> {
    if !c.eval(x).is_zero() {
        return Err(GeometryError::NotIncident);
    }
    Ok(reflect(x, &c.center))
}

/// Reflection of `x` through `center`, without an incidence check.
pub fn reflect(x: &Point, center: &Point) -> Point {
    Point::new(
        &(&two() * &center.x) - &x.x,
        &(&two() * &center.y) - &x.y,
    )
}

pub fn on_curve(p: &Point, e: &Curve) -> bool {
    let v = match e {
        Curve::Line(l) => l.eval(p),
        Curve::Circle(c) => c.eval(p),
    };
    v.is_zero()
}

pub fn is_right_angle(x: &Point, y: &Point, z: &Point) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(GeometryError::Degenerate("coincident triangle vertices"));
    }
    Ok(right_angle_unchecked(x, y, z))
}

/// `(x − y)·(z − y) = 0` for points already known to be distinct.
pub fn right_angle_unchecked(x: &Point, y: &Point, z: &Point) -> bool {
    let (ux, uy) = x.sub(y);
    let (vx, vy) = z.sub(y);
    (&(&ux * &vx) + &(&uy * &vy)).is_zero()
}

pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    let (bx, by) = q.sub(p);
    let (cx, cy) = r.sub(p);
    (&(&bx * &cy) - &(&by * &cx)).is_zero()
}

/// Common points of two distinct curves, sorted.
pub fn intersect(e0: &Curve, e1: &Curve) -> Result<Vec<Point>> {
    if e0 == e1 {
        return Err(GeometryError::IdenticalCurves);
    }
    let mut pts = match (e0, e1) {
        (Curve::Line(l0), Curve::Line(l1)) => intersect_lines(l0, l1)?,
        (Curve::Line(l), Curve::Circle(c)) | (Curve::Circle(c), Curve::Line(l)) => {
            intersect_line_circle(l, c)?
        }
        (Curve::Circle(c0), Curve::Circle(c1)) => intersect_circles(c0, c1)?,
    };
    pts.sort();
    Ok(pts)
}

fn intersect_lines(l0: &Line, l1: &Line) -> Result<Vec<Point>> {
    let det = &(&l0.a * &l1.b) - &(&l1.a * &l0.b);
    if det.is_zero() {
        return Ok(Vec::new());
    }
    let inv = det.inv()?;
    let x = &(&(&l0.b * &l1.c) - &(&l1.b * &l0.c)) * &inv;
    let y = &(&(&l1.a * &l0.c) - &(&l0.a * &l1.c)) * &inv;
    Ok(vec![Point::new(x, y)])
}

fn intersect_line_circle(l: &Line, c: &Circle) -> Result<Vec<Point>> {
    let n = &l.a.square() + &l.b.square();
    let t = l.eval(&c.center).checked_div(&n)?;
    let foot = Point::new(&c.center.x - &(&t * &l.a), &c.center.y - &(&t * &l.b));
    let disc = &c.r2 - &(&t.square() * &n);
    match disc.signum() {
        -1 => Ok(Vec::new()),
        0 => Ok(vec![foot]),
        _ => {
            let h = disc.checked_div(&n)?.sqrt()?;
            let dx = &h * &l.b;
            let dy = &h * &l.a;
            Ok(vec![
                Point::new(&foot.x - &dx, &foot.y + &dy),
                Point::new(&foot.x + &dx, &foot.y - &dy),
            ])
        }
    }
}

fn intersect_circles(c0: &Circle, c1: &Circle) -> Result<Vec<Point>> {
    if c0.center == c1.center {
        return Ok(Vec::new());
    }
    let (p, q) = (&c0.center, &c1.center);
    let a = &two() * &(&q.x - &p.x);
    let b = &two() * &(&q.y - &p.y);
    let k0 = &(&p.x.square() + &p.y.square()) - &c0.r2;
    let k1 = &(&q.x.square() + &q.y.square()) - &c1.r2;
    let radical = Line::new(a, b, &k0 - &k1)?;
    intersect_line_circle(&radical, c0)
}
