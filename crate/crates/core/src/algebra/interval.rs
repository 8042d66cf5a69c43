//! Outward-rounded `f64` enclosures and dyadic rational intervals.
//!
//! Enclosures are the fast filter in front of exact sign computation; rational
//! intervals back [`Real::isolating_interval`](super::Real::isolating_interval).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi]` of doubles guaranteed to contain a value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

const WHOLE: Enclosure = Enclosure {
    lo: f64::NEG_INFINITY,
    hi: f64::INFINITY,
};

impl Enclosure {
    pub fn point(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    pub fn whole() -> Self {
        WHOLE
    }

    /// Enclosure of an exact rational. Exactly representable small integers
    /// stay degenerate; everything else is widened by two ulps on each side.
    pub fn of_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return Enclosure::point(0.0);
        }
        if q.denom().is_one() {
            if let Some(v) = q.numer().to_i64() {
                if v.unsigned_abs() <= (1u64 << 53) {
                    return Enclosure::point(v as f64);
                }
            }
        }
        match q.to_f64() {
            Some(v) if v.is_finite() => Enclosure {
                lo: v.next_down().next_down(),
                hi: v.next_up().next_up(),
            },
            _ if q.is_positive() => Enclosure {
                lo: f64::MAX,
                hi: f64::INFINITY,
            },
            _ => Enclosure {
                lo: f64::NEG_INFINITY,
                hi: f64::MIN,
            },
        }
    }

    pub fn sign(&self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            self.lo / 2.0 + self.hi / 2.0
        } else if self.lo.is_finite() {
            self.lo
        } else {
            self.hi
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn disjoint(&self, other: &Enclosure) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        fix(Enclosure {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        })
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        if (self.lo == 0.0 && self.hi == 0.0) || (o.lo == 0.0 && o.hi == 0.0) {
            return Enclosure::point(0.0);
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        if p.iter().any(|v| v.is_nan()) {
            return WHOLE;
        }
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Enclosure {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    /// Enclosure of the square root of a value known to be non-negative.
    pub fn sqrt(&self) -> Enclosure {
        let lo = self.lo.max(0.0);
        let hi = self.hi.max(0.0);
        Enclosure {
            lo: lo.sqrt().next_down().max(0.0),
            hi: hi.sqrt().next_up(),
        }
    }
}

fn fix(e: Enclosure) -> Enclosure {
    if e.lo.is_nan() || e.hi.is_nan() {
        WHOLE
    } else {
        e
    }
}

/// A closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(q: BigRational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().cloned().unwrap();
        let hi = p.iter().max().cloned().unwrap();
        RatInterval { lo, hi }
    }

    /// Square-root enclosure with endpoints on the grid `2^-bits`.
    pub fn sqrt(&self, bits: u32) -> RatInterval {
        let scale = BigInt::one() << (2 * bits as usize);
        let lo = if self.lo.is_positive() {
            let n = (&self.lo * BigRational::from_integer(scale.clone())).floor().to_integer();
            n.sqrt()
        } else {
            BigInt::zero()
        };
        let hi = if self.hi.is_positive() {
            let m = (&self.hi * BigRational::from_integer(scale)).ceil().to_integer();
            let t = m.sqrt();
            if &t * &t < m {
                t + 1
            } else {
                t
            }
        } else {
            BigInt::zero()
        };
        let den = BigInt::one() << bits as usize;
        RatInterval {
            lo: BigRational::new(lo, den.clone()),
            hi: BigRational::new(hi, den),
        }
    }

    /// Outward-rounds both endpoints to the grid `2^-bits` to keep them small.
    pub fn round(&self, bits: u32) -> RatInterval {
        let den = BigInt::one() << bits as usize;
        let s = BigRational::from_integer(den.clone());
        let round_lo = |q: &BigRational| {
            if is_short_dyadic(q, bits) {
                q.clone()
            } else {
                BigRational::new((q * &s).floor().to_integer(), den.clone())
            }
        };
        let round_hi = |q: &BigRational| {
            if is_short_dyadic(q, bits) {
                q.clone()
            } else {
                BigRational::new((q * &s).ceil().to_integer(), den.clone())
            }
        };
        RatInterval {
            lo: round_lo(&self.lo),
            hi: round_hi(&self.hi),
        }
    }

    pub fn intersect(&self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: (&self.lo).max(&o.lo).clone(),
            hi: (&self.hi).min(&o.hi).clone(),
        }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
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
}

fn is_short_dyadic(q: &BigRational, bits: u32) -> bool {
    let d = q.denom();
    d.bits() <= bits as u64 + 1 && (d & (d - 1u32)).is_zero()
}

pub(crate) fn sign_of(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure_contains_value() {
        for (n, d) in [(1, 3), (-7, 11), (22, 7), (1, 1 << 40)] {
            let e = Enclosure::of_rational(&r(n, d));
            let v = n as f64 / d as f64;
            assert!(e.contains(v), "{n}/{d}: {e:?}");
        }
    }

    #[test]
    fn sqrt_interval_brackets_two() {
        let iv = RatInterval::point(r(2, 1)).sqrt(30);
        assert!(&iv.lo * &iv.lo <= r(2, 1));
        assert!(&iv.hi * &iv.hi >= r(2, 1));
        assert!(iv.width() <= r(1, 1 << 29));
    }

    #[test]
    fn rounding_is_outward() {
        let iv = RatInterval { lo: r(1, 3), hi: r(2, 3) }.round(8);
        assert!(iv.lo <= r(1, 3) && iv.hi >= r(2, 3));
        assert_eq!(iv.lo.denom(), &BigInt::from(256));
    }
}
