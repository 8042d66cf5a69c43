use std::collections::BTreeMap;

use super::{witness_point, Severity, ViolationKind, ViolationReport};
use crate::closure::{LevelRegistry, PointId};
use crate::coloring::{Color, ColorState};
use crate::geometry::{right_angle_unchecked, Point};

/// Indices `tri` into the oracle's input, ascending, and the vertex index
/// carrying the right angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonoWitness {
    pub tri: [usize; 3],
    pub right_at: usize,
}

fn scan_bucket(pts: &[(Point, Color)], bucket: &[usize], firsts: impl Iterator<Item = usize>) -> Option<MonoWitness> {
    for a in firsts {
        for b in a + 1..bucket.len() {
            for c in b + 1..bucket.len() {
                let (i, j, k) = (bucket[a], bucket[b], bucket[c]);
                let (p, q, r) = (&pts[i].0, &pts[j].0, &pts[k].0);
                if p == q || q == r || p == r {
                    continue;
                }
                let at = if right_angle_unchecked(q, p, r) {
                    i
                } else if right_angle_unchecked(p, q, r) {
                    j
                } else if right_angle_unchecked(p, r, q) {
                    k
                } else {
                    continue;
                };
                return Some(MonoWitness { tri: [i, j, k], right_at: at });
            }
        }
    }
    None
}

/// Brute-force search for three distinct points of one color with an exact
/// right angle. Returns the least witness in (sorted index triple) order.
/// With `workers > 1` the search is split across threads; the answer is the
/// same.
pub fn find_mono_right_triangle(pts: &[(Point, Color)], workers: usize) -> Option<MonoWitness> {
    let mut buckets: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
    for (i, (_, c)) in pts.iter().enumerate() {
        buckets.entry(*c).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().filter(|b| b.len() >= 3).collect();
    let workers = workers.max(1);
    let best = if workers == 1 {
        buckets.iter().filter_map(|b| scan_bucket(pts, b, 0..b.len())).min()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let buckets = &buckets;
                    s.spawn(move || {
                        buckets
                            .iter()
                            .filter_map(|b| scan_bucket(pts, b, (w..b.len()).step_by(workers)))
                            .min()
                    })
                })
                .collect();
            handles.into_iter().filter_map(|h| h.join().expect("oracle worker")).min()
        })
    };
    best
}

/// The oracle over every colored registry point, as a report.
pub fn mono_right_triangle_report(
    state: &ColorState,
    reg: &LevelRegistry,
    workers: usize,
) -> Option<ViolationReport> {
    let mut ids: Vec<PointId> = Vec::new();
    let mut pts = Vec::new();
    for (i, rec) in reg.points().iter().enumerate() {
        if let Some(c) = state.color(i as PointId) {
            ids.push(i as PointId);
            pts.push((rec.point.clone(), c));
        }
    }
    let w = find_mono_right_triangle(&pts, workers)?;
    let points = w
        .tri
        .iter()
        .map(|&i| {
            let id = ids[i];
            witness_point(id, &pts[i].0, reg.point(id).level, Some(pts[i].1))
        })
        .collect();
    Some(ViolationReport {
        kind: ViolationKind::MonoRightTriangle,
        severity: Severity::Error,
        detail: format!("right angle at point {}", ids[w.right_at]),
        points,
        curves: Vec::new(),
    })
}
