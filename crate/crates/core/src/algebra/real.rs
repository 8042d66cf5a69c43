use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{sign_of, Enclosure, RatInterval};
use super::AlgebraError;

/// An element of a real quadratic tower over the rationals.
///
/// Values are either plain rationals or `a + b·√r` where `a` and `b` live in
/// the tower strictly below the radical `√r`. Radicals are totally ordered by
/// nesting depth and then by the exact value of their radicand, and sums and
/// products are merged along that order, so values built from the same
/// radicals share a representation. Representations are not fully canonical;
/// equality and ordering are always decided by an exact sign computation.
#[derive(Clone)]
pub struct Real(Repr);

#[derive(Clone)]
enum Repr {
    Rat(BigRational),
    Ext(Arc<Ext>),
}

struct Ext {
    a: Real,
    b: Real,
    root: Arc<Radical>,
    enclosure: OnceLock<Enclosure>,
    refined: Mutex<Option<RatInterval>>,
}

struct Radical {
    radicand: Real,
    depth: u32,
    enclosure: OnceLock<Enclosure>,
}

impl Radical {
    fn new(radicand: Real) -> Arc<Radical> {
        let depth = 1 + radicand.top().map_or(0, |r| r.depth);
        Arc::new(Radical {
            radicand,
            depth,
            enclosure: OnceLock::new(),
        })
    }

    fn sqrt_enclosure(&self) -> Enclosure {
        *self
            .enclosure
            .get_or_init(|| self.radicand.enclosure().sqrt())
    }
}

fn cmp_radicals(r: &Arc<Radical>, s: &Arc<Radical>) -> Ordering {
    if Arc::ptr_eq(r, s) {
        return Ordering::Equal;
    }
    r.depth
        .cmp(&s.depth)
        .then_with(|| r.radicand.cmp(&s.radicand))
}

impl Real {
    pub fn zero() -> Real {
        Real(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Real {
        Real(Repr::Rat(BigRational::one()))
    }

    pub fn int(n: i64) -> Real {
        Real(Repr::Rat(BigRational::from_integer(n.into())))
    }

    /// The exact value `n/d` in lowest terms.
    pub fn from_rational(
        n: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Real, AlgebraError> {
        let d = d.into();
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Real(Repr::Rat(BigRational::new(n.into(), d))))
    }

    pub fn from_ratio(q: BigRational) -> Real {
        Real(Repr::Rat(q))
    }

    /// The rational value, if this is stored as a plain rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Ext(_) => None,
        }
    }

    pub fn is_rational_repr(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    fn is_structural_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    fn is_structural_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    /// `(a, b, r)` with value `a + b·√r`, or `None` for a rational.
    pub fn radical_parts(&self) -> Option<(&Real, &Real, &Real)> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(e) => Some((&e.a, &e.b, &e.root.radicand)),
        }
    }

    fn top(&self) -> Option<&Arc<Radical>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(e) => Some(&e.root),
        }
    }

    /// Number of nested radicals along the top of the tower; 0 for rationals.
    pub fn depth(&self) -> u32 {
        self.top().map_or(0, |r| r.depth)
    }

    fn ext(a: Real, b: Real, root: Arc<Radical>) -> Real {
        if b.is_structural_zero() {
            return a;
        }
        if let Repr::Ext(_) = b.0 {
            // Collapse coefficients that are zero in value but not in form.
            if b.enclosure().sign().is_none() && b.signum() == 0 {
                return a;
            }
        }
        Real(Repr::Ext(Arc::new(Ext {
            a,
            b,
            root,
            enclosure: OnceLock::new(),
            refined: Mutex::new(None),
        })))
    }

    /// A rigorous floating-point enclosure of the value.
    pub fn enclosure(&self) -> Enclosure {
        match &self.0 {
            Repr::Rat(q) => Enclosure::of_rational(q),
            Repr::Ext(e) => *e.enclosure.get_or_init(|| {
                e.a.enclosure()
                    .add(&e.b.enclosure().mul(&e.root.sqrt_enclosure()))
            }),
        }
    }

    /// Approximate value, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Repr::Ext(_) => self.enclosure().mid(),
        }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Rat(q) => sign_of(q),
            Repr::Ext(e) => {
                if let Some(s) = self.enclosure().sign() {
                    return s;
                }
                let sa = e.a.signum();
                let sb = e.b.signum();
                if sb == 0 {
                    return sa;
                }
                if sa == 0 || sa == sb {
                    return sb;
                }
                // Opposite signs: compare a² against b²·r.
                let t = &(&e.a * &e.a) - &(&(&e.b * &e.b) * &e.root.radicand);
                sa * t.signum()
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn abs(&self) -> Real {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Real {
        self * self
    }

    pub fn checked_div(&self, y: &Real) -> Result<Real, AlgebraError> {
        if let (Repr::Rat(p), Repr::Rat(q)) = (&self.0, &y.0) {
            if q.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            return Ok(Real(Repr::Rat(p / q)));
        }
        Ok(self * &y.inv()?)
    }

    pub fn inv(&self) -> Result<Real, AlgebraError> {
        match &self.0 {
            Repr::Rat(q) => {
                if q.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(Real(Repr::Rat(q.recip())))
                }
            }
            Repr::Ext(e) => {
                let n = &(&e.a * &e.a) - &(&(&e.b * &e.b) * &e.root.radicand);
                if n.signum() == 0 {
                    // √r = |a/b|, so the value is a·(1 + sgn(a)·sgn(b)).
                    if e.a.signum() * e.b.signum() > 0 {
                        (&e.a + &e.a).inv()
                    } else {
                        Err(AlgebraError::DivisionByZero)
                    }
                } else {
                    let ni = n.inv()?;
                    Ok(Real::ext(&e.a * &ni, -&(&e.b * &ni), e.root.clone()))
                }
            }
        }
    }

    /// The non-negative square root.
    pub fn sqrt(&self) -> Result<Real, AlgebraError> {
        match self.signum() {
            -1 => return Err(AlgebraError::NegativeSqrt),
            0 => return Ok(Real::zero()),
            _ => {}
        }
        match &self.0 {
            Repr::Rat(q) => Ok(sqrt_rational(q)),
            Repr::Ext(e) => {
                if let (Some(a), Some(b), Some(r)) = (
                    e.a.as_rational(),
                    e.b.as_rational(),
                    e.root.radicand.as_rational(),
                ) {
                    // √(a + b√r) = √((a+s)/2) + sgn(b)·√((a−s)/2) when s = √(a² − b²r) ∈ ℚ.
                    let n = a * a - b * b * r;
                    if let Some(s) = rational_sqrt_exact(&n) {
                        let two = BigRational::from_integer(2.into());
                        let u = sqrt_rational(&((a + &s) / &two));
                        let v = sqrt_rational(&((a - &s) / &two));
                        return Ok(if b.is_positive() { &u + &v } else { &u - &v });
                    }
                }
                Ok(Real::ext(Real::zero(), Real::one(), Radical::new(self.clone())))
            }
        }
    }

    /// The value as a rational, if it is one whose denominator has at most
    /// `max_den_bits` bits. Values stored as rationals are returned directly
    /// regardless of the bound.
    pub fn rational_value(&self, max_den_bits: u64) -> Option<BigRational> {
        let (a, b, r) = match self.radical_parts() {
            None => return self.as_rational().cloned(),
            Some(parts) => parts,
        };
        if self.depth() == 1 && a.is_rational_repr() && b.is_rational_repr() {
            // Depth-one radicands are square-free integers > 1 and `b ≠ 0`.
            debug_assert!(r.is_rational_repr());
            return None;
        }
        // Two rationals with denominators below 2^k are 2^-2k apart, so an
        // interval narrower than that holds at most one; the simplest rational
        // in the interval is then the only candidate.
        let bits = 2 * max_den_bits as u32 + 4;
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        let iv = self.refine_to_width(&eps);
        let q = simplest_between(&iv.lo, &iv.hi);
        if q.denom().bits() > max_den_bits {
            return None;
        }
        (Real::from(q.clone()) == *self).then_some(q)
    }

    /// The current isolating interval without further refinement.
    pub fn isolating_interval(&self) -> RatInterval {
        match &self.0 {
            Repr::Rat(q) => RatInterval::point(q.clone()),
            Repr::Ext(e) => {
                let cached = e.refined.lock().unwrap().clone();
                cached.unwrap_or_else(|| enclosure_interval(&self.enclosure(), self))
            }
        }
    }

    /// Refines the isolating interval to dyadic precision around `2^-bits`.
    /// Successive calls never widen the interval.
    pub fn refine(&self, bits: u32) -> RatInterval {
        match &self.0 {
            Repr::Rat(q) => RatInterval::point(q.clone()),
            Repr::Ext(e) => {
                let fresh = self.interval_at(bits);
                let mut guard = e.refined.lock().unwrap();
                let base = guard
                    .clone()
                    .unwrap_or_else(|| enclosure_interval(&self.enclosure(), self));
                let next = base.intersect(&fresh);
                *guard = Some(next.clone());
                next
            }
        }
    }

    /// Refines until the interval is narrower than `eps`.
    pub fn refine_to_width(&self, eps: &BigRational) -> RatInterval {
        let mut bits = 32;
        loop {
            let iv = self.refine(bits);
            if &iv.width() < eps || bits > 1 << 16 {
                return iv;
            }
            bits *= 2;
        }
    }

    fn interval_at(&self, bits: u32) -> RatInterval {
        match &self.0 {
            Repr::Rat(q) => RatInterval::point(q.clone()),
            Repr::Ext(e) => {
                let inner = bits + 8;
                let s = e.root.radicand.interval_at(2 * inner).sqrt(inner);
                e.a.interval_at(inner)
                    .add(&e.b.interval_at(inner).mul(&s))
                    .round(bits)
            }
        }
    }
}

/// Rational bounds from a float enclosure, falling back to exact refinement
/// when the enclosure is unbounded.
fn enclosure_interval(enc: &Enclosure, x: &Real) -> RatInterval {
    match (
        BigRational::from_float(enc.lo),
        BigRational::from_float(enc.hi),
    ) {
        (Some(lo), Some(hi)) => RatInterval { lo, hi },
        _ => x.interval_at(16),
    }
}

/// The rational with the smallest denominator in `[lo, hi]`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    if !lo.is_positive() {
        return BigRational::zero();
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let up = fl.clone() + BigRational::one();
    if &up <= hi {
        return up;
    }
    // Same integer part: recurse on the reciprocals of the fractional parts.
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn sqrt_rational(q: &BigRational) -> Real {
    debug_assert!(!q.is_negative());
    if q.is_zero() {
        return Real::zero();
    }
    // √(n/d) = √(n·d)/d
    let d = q.denom().clone();
    let m = (q.numer() * &d).magnitude().clone();
    let (s, rest) = split_square(m);
    let coeff = BigRational::new(BigInt::from(s), d);
    if rest.is_one() {
        Real(Repr::Rat(coeff))
    } else {
        let root = Radical::new(Real(Repr::Rat(BigRational::from_integer(rest.into()))));
        Real::ext(Real::zero(), Real(Repr::Rat(coeff)), root)
    }
}

/// Writes `m = s²·r`, removing square factors of small primes and a
/// perfect-square remainder.
fn split_square(mut m: BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut r = BigUint::one();
    let small = m.to_u64();
    let mut p: u64 = 2;
    while p < 1000 {
        if let Some(v) = small {
            if p * p > v {
                break;
            }
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, rem) = m.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            s *= bp.pow(e / 2);
            if e % 2 == 1 {
                r *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let t = m.sqrt();
    if &t * &t == m {
        s *= t;
    } else {
        r *= m;
    }
    (s, r)
}

fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d)
        .then(|| BigRational::new(sn.into(), sd.into()))
}

fn cmp_tops(x: &Real, y: &Real) -> Ordering {
    match (x.top(), y.top()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(r), Some(s)) => cmp_radicals(r, s),
    }
}

fn parts(x: &Real) -> &Ext {
    match &x.0 {
        Repr::Ext(e) => e,
        Repr::Rat(_) => unreachable!("rational has no radical part"),
    }
}

fn add_real(x: &Real, y: &Real) -> Real {
    if let (Repr::Rat(p), Repr::Rat(q)) = (&x.0, &y.0) {
        return Real(Repr::Rat(p + q));
    }
    if x.is_structural_zero() {
        return y.clone();
    }
    if y.is_structural_zero() {
        return x.clone();
    }
    match cmp_tops(x, y) {
        Ordering::Greater => {
            let e = parts(x);
            Real::ext(add_real(&e.a, y), e.b.clone(), e.root.clone())
        }
        Ordering::Less => {
            let e = parts(y);
            Real::ext(add_real(x, &e.a), e.b.clone(), e.root.clone())
        }
        Ordering::Equal => {
            let (ex, ey) = (parts(x), parts(y));
            Real::ext(
                add_real(&ex.a, &ey.a),
                add_real(&ex.b, &ey.b),
                ex.root.clone(),
            )
        }
    }
}

fn mul_real(x: &Real, y: &Real) -> Real {
    if let (Repr::Rat(p), Repr::Rat(q)) = (&x.0, &y.0) {
        return Real(Repr::Rat(p * q));
    }
    if x.is_structural_zero() || y.is_structural_zero() {
        return Real::zero();
    }
    if x.is_structural_one() {
        return y.clone();
    }
    if y.is_structural_one() {
        return x.clone();
    }
    match cmp_tops(x, y) {
        Ordering::Greater => {
            let e = parts(x);
            Real::ext(mul_real(&e.a, y), mul_real(&e.b, y), e.root.clone())
        }
        Ordering::Less => {
            let e = parts(y);
            Real::ext(mul_real(x, &e.a), mul_real(x, &e.b), e.root.clone())
        }
        Ordering::Equal => {
            let (ex, ey) = (parts(x), parts(y));
            let bb = mul_real(&mul_real(&ex.b, &ey.b), &ex.root.radicand);
            Real::ext(
                add_real(&mul_real(&ex.a, &ey.a), &bb),
                add_real(&mul_real(&ex.a, &ey.b), &mul_real(&ex.b, &ey.a)),
                ex.root.clone(),
            )
        }
    }
}

fn neg_real(x: &Real) -> Real {
    match &x.0 {
        Repr::Rat(q) => Real(Repr::Rat(-q)),
        Repr::Ext(e) => Real::ext(neg_real(&e.a), neg_real(&e.b), e.root.clone()),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                $f(self, rhs)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                $f(&self, rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_real);
binop!(Mul, mul, mul_real);
binop!(Sub, sub, |x: &Real, y: &Real| add_real(x, &neg_real(y)));

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        neg_real(self)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        neg_real(&self)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Real) -> Ordering {
        if let (Repr::Rat(p), Repr::Rat(q)) = (&self.0, &other.0) {
            return p.cmp(q);
        }
        let (ea, eb) = (self.enclosure(), other.enclosure());
        if ea.hi < eb.lo {
            return Ordering::Less;
        }
        if eb.hi < ea.lo {
            return Ordering::Greater;
        }
        (self - other).signum().cmp(&0)
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Real {
        Real(Repr::Rat(q))
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Real {
        Real::int(n)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Ext(e) => {
                let radical = format!("sqrt({})", e.root.radicand);
                let term = match e.b.as_rational() {
                    Some(q) if q.is_one() => radical,
                    Some(q) if (-q).is_one() => format!("-{radical}"),
                    Some(q) => format!("{q}*{radical}"),
                    None => format!("({})*{radical}", e.b),
                };
                if e.a.is_structural_zero() {
                    write!(f, "{term}")
                } else if term.starts_with('-') {
                    write!(f, "{}{term}", e.a)
                } else {
                    write!(f, "{}+{term}", e.a)
                }
            }
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({self})")
    }
}
