//! Exact lookup tables for points and curves.
//!
//! Objects whose parameters are all rational are filed under a hash of their
//! canonical rational form. Everything else lives in an [`ExactIndex`].
//! Queries carrying radicals are first tested for being rational in disguise,
//! bounded by the largest denominator ever filed, so an object equal to a
//! hashed entry is always found through the hash.

use std::collections::HashMap;

use smallvec::SmallVec;

use super::rational::{RatCurve, RatPoint};
use super::{Curve, ExactIndex, Point};

#[derive(Default)]
struct Buckets {
    rat: HashMap<u64, SmallVec<[u32; 1]>>,
    rest: ExactIndex,
    rest_count: usize,
    den_bits: u64,
}

impl Buckets {
    fn rat_candidates(&self, fp: u64) -> &[u32] {
        self.rat.get(&fp).map_or(&[], |v| v.as_slice())
    }

    fn insert_rat(&mut self, fp: u64, den_bits: u64, id: u32) {
        self.rat.entry(fp).or_default().push(id);
        self.den_bits = self.den_bits.max(den_bits);
    }

    /// Denominator bound for recognising disguised rationals.
    fn bound(&self) -> u64 {
        self.den_bits.max(64)
    }
}

/// Point table; ids are supplied by the caller and resolved through `get`.
#[derive(Default)]
pub struct PointTable(Buckets);

impl PointTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The rational view of `p` under this table's denominator bound.
    pub fn classify(&self, p: &Point) -> Option<RatPoint> {
        RatPoint::from_point(p, self.0.bound())
    }

    pub fn find_key<'a>(&self, key: &RatPoint, get: impl Fn(u32) -> &'a Point) -> Option<u32> {
        let hit = self
            .0
            .rat_candidates(key.fingerprint())
            .iter()
            .copied()
            .find(|&id| key.equals(get(id)));
        if hit.is_some() || self.0.rest_count == 0 {
            return hit;
        }
        self.0.rest.find(0, &key.enclosure(), |id| key.equals(get(id)))
    }

    pub fn find<'a>(&self, p: &Point, get: impl Fn(u32) -> &'a Point) -> Option<u32> {
        match self.classify(p) {
            Some(key) => self.find_key(&key, get),
            None => self.0.rest.find(0, &p.enclosure(), |id| get(id) == p),
        }
    }

    /// Files `p` under id `id`; `key` must be `classify(p)`.
    pub fn insert(&mut self, p: &Point, key: Option<&RatPoint>, id: u32) {
        match key {
            Some(k) => self.0.insert_rat(k.fingerprint(), k.den_bits(), id),
            None => {
                self.0.rest.insert(0, &p.enclosure(), id);
                self.0.rest_count += 1;
            }
        }
    }
}

/// Curve table; ids are supplied by the caller and resolved through `get`.
#[derive(Default)]
pub struct CurveTable(Buckets);

impl CurveTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classify(&self, c: &Curve) -> Option<RatCurve> {
        RatCurve::from_curve(c, self.0.bound())
    }

    pub fn find_key<'a>(&self, key: &RatCurve, get: impl Fn(u32) -> &'a Curve) -> Option<u32> {
        let hit = self
            .0
            .rat_candidates(key.fingerprint())
            .iter()
            .copied()
            .find(|&id| key.equals(get(id)));
        if hit.is_some() || self.0.rest_count == 0 {
            return hit;
        }
        self.0
            .rest
            .find(key.tag(), &key.enclosure(), |id| key.equals(get(id)))
    }

    pub fn find<'a>(&self, c: &Curve, get: impl Fn(u32) -> &'a Curve) -> Option<u32> {
        match self.classify(c) {
            Some(key) => self.find_key(&key, get),
            None => {
                let (tag, enc) = c.key();
                self.0.rest.find(tag, &enc, |id| get(id) == c)
            }
        }
    }

    /// Files `c` under id `id`; `key` must be `classify(c)`.
    pub fn insert(&mut self, c: &Curve, key: Option<&RatCurve>, id: u32) {
        match key {
            Some(k) => self.0.insert_rat(k.fingerprint(), k.den_bits(), id),
            None => {
                let (tag, enc) = c.key();
                self.0.rest.insert(tag, &enc, id);
                self.0.rest_count += 1;
            }
        }
    }
}
