use super::*;
use crate::closure::ClosureConfig;
use crate::coloring::{run_construction, Enforcement, Mutant, Palette, PaletteRecord, PhiCase};
use crate::geometry::Point;

fn grid(n: i64) -> Vec<Point> {
    (0..n).flat_map(|x| (0..n).map(move |y| Point::int(x, y))).collect()
}

#[test]
fn oracle_finds_axis_corner() {
    let pts = vec![(Point::int(0, 0), 1), (Point::int(1, 0), 1), (Point::int(1, 1), 1)];
    let w = find_mono_right_triangle(&pts, 1).unwrap();
    assert_eq!(w.tri, [0, 1, 2]);
    assert_eq!(w.right_at, 1);
}

#[test]
fn oracle_ignores_injective_colorings() {
    let pts: Vec<_> = grid(3).into_iter().zip(0..).collect();
    assert!(find_mono_right_triangle(&pts, 1).is_none());
}

#[test]
fn oracle_workers_agree() {
    let pts: Vec<_> = grid(4).into_iter().enumerate().map(|(i, p)| (p, (i % 3) as u32)).collect();
    let one = find_mono_right_triangle(&pts, 1);
    assert!(one.is_some());
    for w in 2..5 {
        assert_eq!(find_mono_right_triangle(&pts, w), one);
    }
}

fn cfg(max_level: u32, budget: usize) -> ClosureConfig {
    ClosureConfig {
        max_level,
        budget,
        seed: 0,
    }
}

#[test]
fn engine_output_on_small_grid_is_clean() {
    let run = run_construction(grid(3), &cfg(3, 30), Enforcement::default(), false).unwrap();
    assert!(mono_right_triangle_report(&run.state, &run.registry, 1).is_none());
    let reports = check_conditions(&run.state, &run.registry, CheckOptions::default());
    let errors: Vec<_> = reports.iter().filter(|r| r.is_error()).collect();
    assert!(errors.is_empty(), "{:#?}", &errors[..errors.len().min(3)]);
}

#[test]
fn right_triangle_seeds_get_three_colors() {
    let run = run_construction(
        vec![Point::int(0, 0), Point::int(3, 0), Point::int(0, 4)],
        &cfg(1, 0),
        Enforcement::default(),
        false,
    )
    .unwrap();
    assert_eq!(run.state.colors, vec![Some(0), Some(2), Some(4)]);
    assert!(mono_right_triangle_report(&run.state, &run.registry, 1).is_none());
}

/// A finished two-point run with the state then tampered with.
fn tampered(points: Vec<Point>, f: impl FnOnce(&mut crate::coloring::ColorState, &crate::closure::LevelRegistry)) -> Vec<ViolationReport> {
    let mut run = run_construction(points, &cfg(1, 0), Enforcement::default(), false).unwrap();
    f(&mut run.state, &run.registry);
    check_conditions(&run.state, &run.registry, CheckOptions::default())
}

fn kinds(r: &[ViolationReport]) -> Vec<ViolationKind> {
    let mut k: Vec<_> = r.iter().filter(|r| r.is_error()).map(|r| r.kind).collect();
    k.sort();
    k.dedup();
    k
}

#[test]
fn antipodal_pair_with_allowed_color_is_cond_8() {
    // (1,0) and (-1,0) on the Thales circle, both color 4, palette FULL.
    let r = tampered(vec![Point::int(1, 0), Point::int(-1, 0)], |st, reg| {
        st.set_color(0, 4);
        st.set_color(1, 4);
        let c = reg.find_curve(&crate::geometry::thales_circle(&Point::int(1, 0), &Point::int(-1, 0)).unwrap().into()).unwrap();
        st.set_palette(
            c,
            PaletteRecord {
                palette: Palette::full(),
                case: PhiCase::CircleCase2,
                overfull: false,
            },
        );
    });
    assert!(kinds(&r).contains(&ViolationKind::Cond8), "{:?}", kinds(&r));
}

#[test]
fn three_excluded_points_on_a_circle_is_cond_9() {
    let pts = vec![Point::int(5, 0), Point::int(-5, 0), Point::int(3, 4)];
    let r = tampered(pts, |st, reg| {
        for p in 0..3 {
            st.set_color(p, 7);
        }
        let k = crate::geometry::circumcircle(&Point::int(5, 0), &Point::int(-5, 0), &Point::int(3, 4)).unwrap();
        let c = reg.find_curve(&k.into()).unwrap();
        st.set_palette(
            c,
            PaletteRecord {
                palette: Palette::excluding([7]),
                case: PhiCase::CircleCase1,
                overfull: false,
            },
        );
    });
    let k = kinds(&r);
    assert!(k.contains(&ViolationKind::Cond9), "{k:?}");
    // The colors also break batch injectivity, which is reported separately.
    assert!(k.contains(&ViolationKind::Cond6));
}

#[test]
fn missing_curves_are_reported() {
    let run = run_construction(grid(2), &cfg(1, 0), Enforcement::default(), false).unwrap();
    assert!(check_conditions(&run.state, &run.registry, CheckOptions::default()).is_empty());
    // Surveyed but never committed: perpendiculars are absent, palettes too.
    let reg = crate::closure::LevelRegistry::with_seeds(grid(2), false).unwrap();
    let mut st = crate::coloring::ColorState::new(Enforcement::default());
    for p in 0..4 {
        st.set_color(p, 2 * p);
    }
    let k = kinds(&check_conditions(&st, &reg, CheckOptions::default()));
    assert!(k.contains(&ViolationKind::Exhaustiveness), "{k:?}");
    assert!(k.contains(&ViolationKind::PaletteLaw), "{k:?}");
}

#[test]
fn palette_law_catches_phi_mutant() {
    let out = mutation_suite(grid(3), &cfg(2, 10), Mutant::PhiCases, 1).unwrap();
    assert!(out.summary.errors_of(ViolationKind::PaletteLaw) > 0);
}

#[test]
fn constant_mutant_is_caught_by_the_oracle() {
    let out = mutation_suite(grid(3), &cfg(1, 0), Mutant::All, 1).unwrap();
    assert!(out.caught());
    let w = out.oracle.expect("witness");
    assert_eq!(w.points.len(), 3);
}

#[test]
fn gap_mutant_fails_the_gap_check() {
    let out = mutation_suite(grid(2), &cfg(1, 0), Mutant::GapRule, 1).unwrap();
    assert!(out.reports.iter().any(|r| r.kind == ViolationKind::Cond6 && r.detail.contains("gap")));
}

#[test]
fn report_json_uses_tags() {
    let out = mutation_suite(grid(3), &cfg(1, 0), Mutant::All, 1).unwrap();
    let v = serde_json::to_value(out.oracle.unwrap()).unwrap();
    assert_eq!(v["kind"], "MONO_RIGHT_TRIANGLE");
    assert_eq!(v["severity"], "error");
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
}
