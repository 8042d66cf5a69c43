use std::collections::HashMap;

use smallvec::SmallVec;

use crate::algebra::Enclosure;

const CELL_BITS: i32 = 20;
const MAX_SPAN: i64 = 2;

/// Deduplication index for exact values that have no canonical hash.
///
/// Each entry is filed under every grid cell its enclosure box touches, so two
/// equal values always share a cell; candidates are then confirmed by the
/// caller with exact equality. Entries whose box is too wide to grid go to a
/// bucket that every lookup scans, and a too-wide query scans everything.
/// Ids must be handed out densely from zero.
#[derive(Default)]
pub struct ExactIndex {
    cells: HashMap<(u8, [i64; 3]), SmallVec<[u32; 2]>>,
    wide: Vec<u32>,
    len: u32,
}

fn cell_range(e: &Enclosure) -> Option<(i64, i64)> {
    let s = (2f64).powi(CELL_BITS);
    let (lo, hi) = ((e.lo * s).floor(), (e.hi * s).floor());
    if !(lo.is_finite() && hi.is_finite()) || lo.abs() > 9.0e18 || hi.abs() > 9.0e18 {
        return None;
    }
    let (lo, hi) = (lo as i64, hi as i64);
    (hi - lo < MAX_SPAN).then_some((lo, hi))
}

type Cells = SmallVec<[(u8, [i64; 3]); 2]>;

fn cells(tag: u8, key: &[Enclosure]) -> Option<Cells> {
    debug_assert!(key.len() <= 3);
    let mut out: SmallVec<[[i64; 3]; 2]> = SmallVec::new();
    out.push([0; 3]);
    for (d, e) in key.iter().enumerate() {
        let (lo, hi) = cell_range(e)?;
        let mut next = SmallVec::new();
        for c in &out {
            for v in lo..=hi {
                let mut c = *c;
                c[d] = v;
                next.push(c);
            }
        }
        out = next;
    }
    Some(out.into_iter().map(|c| (tag, c)).collect())
}

impl ExactIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, tag: u8, key: &[Enclosure], id: u32) {
        self.len = self.len.max(id + 1);
        match cells(tag, key) {
            Some(cs) => {
                for c in cs {
                    self.cells.entry(c).or_default().push(id);
                }
            }
            None => self.wide.push(id),
        }
    }

    /// First candidate accepted by `eq`, in ascending id order.
    pub fn find(&self, tag: u8, key: &[Enclosure], mut eq: impl FnMut(u32) -> bool) -> Option<u32> {
        match cells(tag, key) {
            Some(cs) => {
                let mut cand: SmallVec<[u32; 8]> = SmallVec::new();
                for c in &cs {
                    if let Some(ids) = self.cells.get(c) {
                        cand.extend(ids.iter().copied());
                    }
                }
                cand.extend(self.wide.iter().copied());
                cand.sort_unstable();
                cand.dedup();
                cand.into_iter().find(|&id| eq(id))
            }
            None => (0..self.len).find(|&id| eq(id)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(lo: f64, hi: f64) -> Enclosure {
        Enclosure { lo, hi }
    }

    #[test]
    fn straddling_boxes_meet() {
        let edge = 1.0 / (1u64 << 20) as f64;
        let mut idx = ExactIndex::new();
        idx.insert(0, &[e(edge - 1e-12, edge + 1e-12), e(0.0, 0.0)], 0);
        assert_eq!(idx.find(0, &[e(edge, edge), e(0.0, 0.0)], |_| true), Some(0));
        assert_eq!(idx.find(0, &[e(edge - 1e-13, edge - 1e-13), e(0.0, 0.0)], |_| true), Some(0));
        assert_eq!(idx.find(1, &[e(edge, edge), e(0.0, 0.0)], |_| true), None);
        assert_eq!(idx.find(0, &[e(0.5, 0.5), e(0.0, 0.0)], |_| true), None);
    }

    #[test]
    fn wide_entries_are_always_candidates() {
        let mut idx = ExactIndex::new();
        idx.insert(0, &[e(f64::NEG_INFINITY, f64::INFINITY)], 0);
        idx.insert(0, &[e(3.0, 3.0)], 1);
        assert_eq!(idx.find(0, &[e(7.0, 7.0)], |_| true), Some(0));
        assert_eq!(idx.find(0, &[e(-1.0, 1e300)], |id| id == 1), Some(1));
    }

    #[test]
    fn corner_boxes_expand_all_cells() {
        let cs = cells(0, &[e(-1e-9, 1e-9), e(-1e-9, 1e-9), e(-1e-9, 1e-9)]).unwrap();
        assert_eq!(cs.len(), 8);
        let mut sorted = cs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
    }
}
