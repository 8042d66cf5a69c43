mod common;

use std::collections::BTreeSet;

use common::{palette_mismatches, rat_point};
use planecolor_core::algebra::Real;
use planecolor_core::closure::{ClosureConfig, Provenance};
use planecolor_core::coloring::{run_construction, Color, Construction, Enforcement};
use planecolor_core::geometry::{on_curve, Point};
use planecolor_core::io::coloring_csv;
use planecolor_core::verify::{check_conditions, find_mono_right_triangle, CheckOptions};
use proptest::prelude::*;

/// Brute-force oracle: every ordered triple, dot product at each vertex.
fn brute_mono(pts: &[(Point, Color)]) -> bool {
    let right = |a: &Point, v: &Point, b: &Point| {
        (&(&(&a.x - &v.x) * &(&b.x - &v.x)) + &(&(&a.y - &v.y) * &(&b.y - &v.y))).is_zero()
    };
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                if a.1 != b.1 || b.1 != c.1 || a.0 == b.0 || b.0 == c.0 || a.0 == c.0 {
                    continue;
                }
                if right(&b.0, &a.0, &c.0) || right(&a.0, &b.0, &c.0) || right(&a.0, &c.0, &b.0) {
                    return true;
                }
            }
        }
    }
    false
}

/// Rotation by the angle with cosine 3/5, then a rational translation.
fn rigid(p: &Point, t: &(Real, Real)) -> Point {
    let (c, s) = (Real::from_rational(3, 5).unwrap(), Real::from_rational(4, 5).unwrap());
    Point::new(
        &(&(&c * &p.x) - &(&s * &p.y)) + &t.0,
        &(&(&s * &p.x) + &(&c * &p.y)) + &t.1,
    )
}

fn colored() -> impl Strategy<Value = Vec<(Point, Color)>> {
    prop::collection::vec((rat_point(), 0u32..3), 3..14).prop_map(|mut v| {
        let mut seen = BTreeSet::new();
        v.retain(|(p, _)| seen.insert(p.clone()));
        v
    })
}

fn corpus() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set(rat_point(), 3..9).prop_map(|s| s.into_iter().collect())
}

fn build(seeds: Vec<Point>, cfg: &ClosureConfig) -> Construction {
    run_construction(seeds, cfg, Enforcement::default(), false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_matches_brute_force(pts in colored(), workers in 1usize..4) {
        let got = find_mono_right_triangle(&pts, workers);
        prop_assert_eq!(got.is_some(), brute_mono(&pts));
        if let Some(w) = got {
            let [a, b, c] = w.tri;
            prop_assert!(pts[a].1 == pts[b].1 && pts[b].1 == pts[c].1);
        }
    }

    #[test]
    fn oracle_verdict_is_rigid_invariant(
        pts in colored(),
        perm_seed in any::<u64>(),
        tx in (-5i64..5, 1i64..4),
        ty in (-5i64..5, 1i64..4),
    ) {
        let verdict = find_mono_right_triangle(&pts, 1).is_some();
        let mut shuffled = pts.clone();
        let mut s = perm_seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(find_mono_right_triangle(&shuffled, 2).is_some(), verdict);
        let t = (Real::from_rational(tx.0, tx.1).unwrap(), Real::from_rational(ty.0, ty.1).unwrap());
        let moved: Vec<_> = pts.iter().map(|(p, c)| (rigid(p, &t), *c)).collect();
        prop_assert_eq!(find_mono_right_triangle(&moved, 1).is_some(), verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn construction_invariants(seeds in corpus(), max_level in 1u32..=3, budget in 0usize..12, seed in 0u64..50) {
        let cfg = ClosureConfig { max_level, budget, seed };
        let run = build(seeds.clone(), &cfg);
        let (reg, state) = (&run.registry, &run.state);

        // Stratification soundness.
        for rec in reg.curves() {
            let birth = rec.birth.expect("no pending curves after a run");
            for p in rec.provenance.parent_points() {
                prop_assert!(reg.point(p).level <= birth);
            }
            for c in rec.provenance.parent_curves() {
                prop_assert!(reg.curve(c).birth.unwrap() <= birth);
            }
        }
        for rec in reg.points() {
            if rec.provenance == Provenance::Seed {
                prop_assert_eq!(rec.level, 1);
            }
            for c in rec.provenance.parent_curves() {
                prop_assert!(reg.curve(c).birth.unwrap() < rec.level);
            }
            for p in rec.provenance.parent_points() {
                prop_assert!(reg.point(p).level < rec.level);
            }
        }

        // Dedup.
        let distinct: BTreeSet<&Point> = reg.points().iter().map(|r| &r.point).collect();
        prop_assert_eq!(distinct.len(), reg.num_points());
        let curves = reg.curves();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                prop_assert!(curves[i].curve != curves[j].curve);
            }
        }

        // (6): injective batches with gaps of at least 2.
        for level in 1..=reg.top_level() {
            let mut cols: Vec<Color> = reg.batch(level).map(|p| state.color(p).unwrap()).collect();
            cols.sort_unstable();
            for w in cols.windows(2) {
                prop_assert!(w[1] >= w[0] + 2, "level {} colors {:?}", level, cols);
            }
        }

        // (7), by geometric incidence.
        for (pid, p) in reg.points().iter().enumerate() {
            let col = state.color(pid as u32).unwrap();
            for (cid, c) in curves.iter().enumerate() {
                if c.birth.unwrap() < p.level && on_curve(&p.point, &c.curve) {
                    prop_assert!(state.palette(cid as u32).unwrap().contains(col));
                }
            }
        }

        prop_assert!(palette_mismatches(state, reg).is_empty());
        let pts: Vec<_> = reg.points().iter().enumerate().map(|(i, r)| (r.point.clone(), state.color(i as u32).unwrap())).collect();
        prop_assert!(find_mono_right_triangle(&pts, 1).is_none());
        let errors: Vec<_> = check_conditions(state, reg, CheckOptions::default()).into_iter().filter(|r| r.is_error()).collect();
        prop_assert!(errors.is_empty(), "{:?}", errors.first());

        // Determinism.
        let again = build(seeds, &cfg);
        prop_assert_eq!(coloring_csv(state, reg), coloring_csv(&again.state, &again.registry));
    }
}
