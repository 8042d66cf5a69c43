//! Finite emulation of the levelled closure of points and curves.
//!
//! Points live in level-contiguous batches; curves are registered in the order
//! they are generated and carry the level at which they were committed.
//! Incidences are discovered by a survey that runs whenever a batch of points
//! is registered: every pair and triple containing a new point is turned into
//! its connecting line, Thales circle and circumcircle and looked up exactly.
//! A curve that is not registered yet becomes *pending* and is committed by
//! the next [`LevelRegistry::generate_curves`].

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::rational::{rat_circumcircle, rat_line_through, rat_thales};
use crate::geometry::{
    circumcircle, intersect, line_through, perpendicular_at, reflect, thales_circle, Curve,
    CurveTable, GeometryError, Point, PointTable, RatCurve, RatPoint,
};

pub type PointId = u32;
pub type CurveId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("seed {index} duplicates seed {first}")]
    DuplicateSeed { index: usize, first: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("import: {0}")]
    Import(String),
}

/// How a point or curve entered the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    Connecting { p: PointId, q: PointId },
    Thales { p: PointId, q: PointId },
    Circumcircle { p: PointId, q: PointId, r: PointId },
    Intersection { e0: CurveId, e1: CurveId },
    Antipode { x: PointId, circle: CurveId },
    Perpendicular { line: CurveId, x: PointId },
    /// Loaded from a file; parents unknown.
    Imported,
}

impl Provenance {
    /// Number of the closure rule that produced the object, if any.
    pub fn rule(&self) -> Option<u8> {
        match self {
            Provenance::Connecting { .. } | Provenance::Thales { .. } => Some(1),
            Provenance::Circumcircle { .. } => Some(2),
            Provenance::Intersection { .. } => Some(3),
            Provenance::Antipode { .. } => Some(4),
            Provenance::Perpendicular { .. } => Some(5),
            Provenance::Seed | Provenance::Imported => None,
        }
    }

    pub fn parent_points(&self) -> Vec<PointId> {
        match *self {
            Provenance::Connecting { p, q } | Provenance::Thales { p, q } => vec![p, q],
            Provenance::Circumcircle { p, q, r } => vec![p, q, r],
            Provenance::Antipode { x, .. } | Provenance::Perpendicular { x, .. } => vec![x],
            _ => Vec::new(),
        }
    }

    pub fn parent_curves(&self) -> Vec<CurveId> {
        match *self {
            Provenance::Intersection { e0, e1 } => vec![e0, e1],
            Provenance::Antipode { circle, .. } => vec![circle],
            Provenance::Perpendicular { line, .. } => vec![line],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PointRec {
    pub point: Point,
    pub level: u32,
    pub batch_index: u32,
    pub provenance: Provenance,
}

#[derive(Debug, Clone)]
pub struct CurveRec {
    pub curve: Curve,
    /// `None` while pending.
    pub birth: Option<u32>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub max_level: u32,
    /// Total number of derived points over the whole run, split evenly over
    /// the derivation rounds (earlier rounds take the remainder).
    pub budget: usize,
    pub seed: u64,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_level: 2,
            budget: 0,
            seed: 0,
        }
    }
}

impl ClosureConfig {
    /// Points to derive for the batch born at `level` (levels 2..=max_level).
    pub fn budget_for(&self, level: u32) -> usize {
        if level < 2 || level > self.max_level {
            return 0;
        }
        let rounds = (self.max_level - 1) as usize;
        let k = (level - 2) as usize;
        self.budget / rounds + usize::from(k < self.budget % rounds)
    }
}

#[derive(Default)]
pub struct LevelRegistry {
    points: Vec<PointRec>,
    curves: Vec<CurveRec>,
    point_table: PointTable,
    curve_table: CurveTable,
    rat: Vec<Option<RatPoint>>,
    on: Vec<Vec<PointId>>,
    at: Vec<Vec<CurveId>>,
    committed: usize,
    perp_marks: (usize, usize),
}

fn sorted_insert(v: &mut Vec<u32>, x: u32) -> bool {
    match v.binary_search(&x) {
        Ok(_) => false,
        Err(i) => {
            v.insert(i, x);
            true
        }
    }
}

impl LevelRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// A registry holding `seeds` at level 1 in input order, already surveyed.
    pub fn with_seeds(seeds: Vec<Point>, allow_duplicates: bool) -> Result<Self, ClosureError> {
        let mut reg = LevelRegistry::new();
        reg.register_seeds(seeds, allow_duplicates)?;
        Ok(reg)
    }

    pub fn register_seeds(
        &mut self,
        seeds: Vec<Point>,
        allow_duplicates: bool,
    ) -> Result<Range<PointId>, ClosureError> {
        assert!(self.points.is_empty(), "seeds must be registered first");
        let mut table = PointTable::new();
        let mut kept: Vec<Point> = Vec::with_capacity(seeds.len());
        let mut origin = Vec::new();
        for (i, p) in seeds.into_iter().enumerate() {
            if let Some(j) = table.find(&p, |j| &kept[j as usize]) {
                if allow_duplicates {
                    continue;
                }
                return Err(ClosureError::DuplicateSeed {
                    index: i,
                    first: origin[j as usize],
                });
            }
            let key = table.classify(&p);
            table.insert(&p, key.as_ref(), kept.len() as u32);
            kept.push(p);
            origin.push(i);
        }
        Ok(self.register_batch(
            kept.into_iter().map(|p| (p, Provenance::Seed)).collect(),
            1,
        ))
    }

    /// Rebuilds a finished registry from dumped points `(point, level,
    /// batch_index)` and curves `(curve, birth)`. Only points, curves and
    /// lookups are restored; incidence lists stay empty, which is all the
    /// verifier needs.
    pub fn import(points: Vec<(Point, u32, u32)>, curves: Vec<(Curve, u32)>) -> Result<Self, ClosureError> {
        let mut reg = LevelRegistry::new();
        for (point, level, batch_index) in points {
            if level == 0 || level < reg.top_level() {
                return Err(ClosureError::Import(format!("point {} is out of level order", reg.points.len())));
            }
            let id = reg.points.len() as PointId;
            let key = reg.point_table.classify(&point);
            if reg.point_table.find(&point, |i| &reg.points[i as usize].point).is_some() {
                return Err(ClosureError::Import(format!("point {id} is a duplicate")));
            }
            reg.point_table.insert(&point, key.as_ref(), id);
            reg.rat.push(key);
            reg.points.push(PointRec {
                point,
                level,
                batch_index,
                provenance: Provenance::Imported,
            });
            reg.at.push(Vec::new());
        }
        for (curve, birth) in curves {
            reg.push_curve(curve, Some(birth), Provenance::Imported);
        }
        reg.committed = reg.curves.len();
        reg.perp_marks = (reg.curves.len(), reg.points.len());
        Ok(reg)
    }

    pub fn points(&self) -> &[PointRec] {
        &self.points
    }

    pub fn curves(&self) -> &[CurveRec] {
        &self.curves
    }

    pub fn point(&self, id: PointId) -> &PointRec {
        &self.points[id as usize]
    }

    pub fn curve(&self, id: CurveId) -> &CurveRec {
        &self.curves[id as usize]
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_curves(&self) -> usize {
        self.curves.len()
    }

    pub fn num_pending(&self) -> usize {
        self.curves.len() - self.committed
    }

    /// Registered points lying on `c`, ascending.
    pub fn points_on(&self, c: CurveId) -> &[PointId] {
        &self.on[c as usize]
    }

    /// Registered (or pending) curves through `p`, ascending.
    pub fn curves_through(&self, p: PointId) -> &[CurveId] {
        &self.at[p as usize]
    }

    /// Committed curves born strictly before the level of `p`.
    pub fn prior_curves_through(&self, p: PointId) -> Vec<CurveId> {
        let level = self.points[p as usize].level;
        self.at[p as usize]
            .iter()
            .copied()
            .filter(|&c| self.curves[c as usize].birth.is_some_and(|b| b < level))
            .collect()
    }

    pub fn find_point(&self, p: &Point) -> Option<PointId> {
        self.point_table.find(p, |id| &self.points[id as usize].point)
    }

    /// Registered or pending curve equal to `c`.
    pub fn find_curve(&self, c: &Curve) -> Option<CurveId> {
        self.curve_table.find(c, |id| &self.curves[id as usize].curve)
    }

    /// The rational view of a registered point, when it has one.
    pub fn rational_point(&self, id: PointId) -> Option<&RatPoint> {
        self.rat[id as usize].as_ref()
    }

    pub fn top_level(&self) -> u32 {
        self.points.last().map_or(0, |p| p.level)
    }

    /// Ids of the points born at `level`.
    pub fn batch(&self, level: u32) -> Range<PointId> {
        let lo = self.points.partition_point(|p| p.level < level);
        let hi = self.points.partition_point(|p| p.level <= level);
        lo as PointId..hi as PointId
    }

    /// Ids of the committed curves born at `level`.
    pub fn curves_born(&self, level: u32) -> Range<CurveId> {
        let committed = &self.curves[..self.committed];
        let lo = committed.partition_point(|c| c.birth.unwrap() < level);
        let hi = committed.partition_point(|c| c.birth.unwrap() <= level);
        lo as CurveId..hi as CurveId
    }

    fn add_incidence(&mut self, c: CurveId, p: PointId) {
        if sorted_insert(&mut self.on[c as usize], p) {
            sorted_insert(&mut self.at[p as usize], c);
        }
    }

    fn push_curve(&mut self, curve: Curve, birth: Option<u32>, provenance: Provenance) -> CurveId {
        let key = self.curve_table.classify(&curve);
        self.push_classified(curve, key, birth, provenance)
    }

    fn push_classified(
        &mut self,
        curve: Curve,
        key: Option<RatCurve>,
        birth: Option<u32>,
        provenance: Provenance,
    ) -> CurveId {
        let id = self.curves.len() as CurveId;
        let curve = key.as_ref().map_or(curve, RatCurve::to_curve);
        self.curve_table.insert(&curve, key.as_ref(), id);
        self.curves.push(CurveRec {
            curve,
            birth,
            provenance,
        });
        self.on.push(Vec::new());
        id
    }

    /// Registers `curve` through `pts` unless already present; returns its id.
    fn note_curve(&mut self, curve: Curve, provenance: Provenance, pts: &[PointId]) -> CurveId {
        let key = self.curve_table.classify(&curve);
        let found = match &key {
            Some(k) => self.curve_table.find_key(k, |id| &self.curves[id as usize].curve),
            None => self.find_curve(&curve),
        };
        let id = match found {
            Some(id) => id,
            None => self.push_classified(curve, key, None, provenance),
        };
        for &p in pts {
            self.add_incidence(id, p);
        }
        id
    }

    fn note_rat(&mut self, key: RatCurve, provenance: Provenance, pts: &[PointId]) -> CurveId {
        let found = self.curve_table.find_key(&key, |id| &self.curves[id as usize].curve);
        let id = match found {
            Some(id) => id,
            None => {
                let curve = key.to_curve();
                self.push_classified(curve, Some(key), None, provenance)
            }
        };
        for &p in pts {
            self.add_incidence(id, p);
        }
        id
    }

    fn register_batch(&mut self, batch: Vec<(Point, Provenance)>, level: u32) -> Range<PointId> {
        debug_assert!(level >= self.top_level());
        let start = self.points.len() as PointId;
        for (j, (point, provenance)) in batch.into_iter().enumerate() {
            let id = self.points.len() as PointId;
            let key = self.point_table.classify(&point);
            let point = key.as_ref().map_or(point, RatPoint::to_point);
            self.point_table.insert(&point, key.as_ref(), id);
            self.rat.push(key);
            self.points.push(PointRec {
                point,
                level,
                batch_index: j as u32,
                provenance,
            });
            self.at.push(Vec::new());
        }
        let end = self.points.len() as PointId;
        self.survey(start, end);
        start..end
    }

    /// Discovers incidences of the points `start..end` with every curve of
    /// rules (1)/(2), creating pending curves as needed. Order: connecting
    /// lines, then Thales circles (pairs `i < j`, `j` outer), then
    /// circumcircles (triples `i < j < k`, `k` outer).
    fn survey(&mut self, start: PointId, end: PointId) {
        let rat = std::mem::take(&mut self.rat);
        let pt = |reg: &LevelRegistry, i: PointId| reg.points[i as usize].point.clone();
        for j in start..end {
            for i in 0..j {
                let prov = Provenance::Connecting { p: i, q: j };
                match (&rat[i as usize], &rat[j as usize]) {
                    (Some(a), Some(b)) => {
                        self.note_rat(rat_line_through(a, b), prov, &[i, j]);
                    }
                    _ => {
                        let l = line_through(&pt(self, i), &pt(self, j)).expect("distinct points");
                        self.note_curve(l.into(), prov, &[i, j]);
                    }
                }
            }
        }
        for j in start..end {
            for i in 0..j {
                let prov = Provenance::Thales { p: i, q: j };
                match (&rat[i as usize], &rat[j as usize]) {
                    (Some(a), Some(b)) => {
                        self.note_rat(rat_thales(a, b), prov, &[i, j]);
                    }
                    _ => {
                        let c = thales_circle(&pt(self, i), &pt(self, j)).expect("distinct points");
                        self.note_curve(c.into(), prov, &[i, j]);
                    }
                }
            }
        }
        for k in start..end {
            for j in 0..k {
                for i in 0..j {
                    let prov = Provenance::Circumcircle { p: i, q: j, r: k };
                    match (&rat[i as usize], &rat[j as usize], &rat[k as usize]) {
                        (Some(a), Some(b), Some(c)) => {
                            if let Some(key) = rat_circumcircle(a, b, c) {
                                self.note_rat(key, prov, &[i, j, k]);
                            }
                        }
                        _ => {
                            let c = circumcircle(&pt(self, i), &pt(self, j), &pt(self, k));
                            if let Ok(c) = c {
                                self.note_curve(c.into(), prov, &[i, j, k]);
                            }
                        }
                    }
                }
            }
        }
        self.rat = rat;
    }

    /// Commits every pending curve at `level`, then adds the perpendicular at
    /// each incident point of each line (rule (5)) for the (line, point)
    /// pairs not handled by an earlier call. Returns the new curve ids.
    pub fn generate_curves(&mut self, level: u32) -> Range<CurveId> {
        let start = self.committed;
        for c in &mut self.curves[start..] {
            c.birth = Some(level);
        }
        self.committed = self.curves.len();
        let (old_curves, old_points) = self.perp_marks;
        let n = self.curves.len();
        for l in 0..n {
            let Some(line) = self.curves[l].curve.as_line().cloned() else {
                continue;
            };
            let on = self.on[l].clone();
            for x in on {
                if l < old_curves && (x as usize) < old_points {
                    continue;
                }
                let perp = perpendicular_at(&line, &self.points[x as usize].point)
                    .expect("incidence lists are exact");
                let perp = Curve::from(perp);
                if self.find_curve(&perp).is_none() {
                    let id = self.push_curve(
                        perp,
                        Some(level),
                        Provenance::Perpendicular {
                            line: l as CurveId,
                            x,
                        },
                    );
                    self.add_incidence(id, x);
                }
            }
        }
        self.committed = self.curves.len();
        self.perp_marks = (self.curves.len(), self.points.len());
        start as CurveId..self.curves.len() as CurveId
    }

    /// Registers up to `budget` new points at `level + 1`: antipodes of
    /// registered points on registered circles first (circles in registry
    /// order, points ascending), then intersections of curve pairs in
    /// registry order. A nonzero `seed` rotates where each scan starts.
    pub fn derive_points(&mut self, level: u32, budget: usize, seed: u64) -> Range<PointId> {
        let start = self.points.len() as PointId;
        if budget == 0 {
            return start..start;
        }
        let mut harvest = Harvest::new(budget);
        let eligible: Vec<CurveId> = (0..self.committed as CurveId)
            .filter(|&c| self.curves[c as usize].birth.is_some_and(|b| b <= level))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rotate = |v: &mut Vec<CurveId>, rng: &mut ChaCha8Rng| {
            if seed != 0 && !v.is_empty() {
                let k = rng.random_range(0..v.len());
                v.rotate_left(k);
            }
        };
        let mut circles: Vec<CurveId> = eligible
            .iter()
            .copied()
            .filter(|&c| !self.curves[c as usize].curve.is_line())
            .collect();
        rotate(&mut circles, &mut rng);
        'antipodes: for &c in &circles {
            let center = &self.curves[c as usize].curve.as_circle().unwrap().center;
            for &x in &self.on[c as usize] {
                let y = reflect(&self.points[x as usize].point, center);
                if harvest.offer(self, y, Provenance::Antipode { x, circle: c }) {
                    break 'antipodes;
                }
            }
        }
        if !harvest.full() {
            let mut order = eligible.clone();
            rotate(&mut order, &mut rng);
            'pairs: for (a, &e0) in order.iter().enumerate() {
                for &e1 in &order[a + 1..] {
                    let (lo, hi) = (e0.min(e1), e0.max(e1));
                    let pts = intersect(&self.curves[lo as usize].curve, &self.curves[hi as usize].curve)
                        .expect("registered curves are distinct");
                    for pt in pts {
                        if harvest.offer(self, pt, Provenance::Intersection { e0: lo, e1: hi }) {
                            break 'pairs;
                        }
                    }
                }
            }
        }
        self.register_batch(harvest.found, level + 1)
    }
}

/// Collects distinct unregistered points up to a budget.
struct Harvest {
    found: Vec<(Point, Provenance)>,
    seen: PointTable,
    budget: usize,
}

impl Harvest {
    fn new(budget: usize) -> Self {
        Harvest {
            found: Vec::new(),
            seen: PointTable::new(),
            budget,
        }
    }

    fn full(&self) -> bool {
        self.found.len() >= self.budget
    }

    /// Adds `pt` if new; returns whether the budget is now exhausted.
    fn offer(&mut self, reg: &LevelRegistry, pt: Point, prov: Provenance) -> bool {
        if reg.find_point(&pt).is_none()
            && self.seen.find(&pt, |i| &self.found[i as usize].0).is_none()
        {
            let key = self.seen.classify(&pt);
            self.seen.insert(&pt, key.as_ref(), self.found.len() as u32);
            self.found.push((pt, prov));
        }
        self.full()
    }
}
