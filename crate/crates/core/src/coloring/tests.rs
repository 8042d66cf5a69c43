use super::*;
use crate::closure::ClosureConfig;
use crate::geometry::Point;

fn pal(c: &[Color]) -> Palette {
    Palette::excluding(c.iter().copied())
}

#[test]
fn palette_membership_and_display() {
    let p = pal(&[5, 3, 3]);
    assert_eq!(p.complement(), &[3, 5]);
    assert!(!p.contains(3) && p.contains(4) && !p.contains(5));
    assert_eq!(p.to_string(), "ω−{3,5}");
    assert!(Palette::full().contains(0));
    assert_eq!(Palette::full().to_string(), "ω");
}

#[test]
fn circle_cases() {
    let r = circle_palette(&[]);
    assert!(r.palette.is_full());
    assert_eq!(r.case, PhiCase::CircleCase1);
    let r = circle_palette(&[3, 5]);
    assert_eq!(r.palette, pal(&[3, 5]));
    assert_eq!(r.case, PhiCase::CircleCase1);
    let r = circle_palette(&[3, 3]);
    assert!(r.palette.is_full());
    assert_eq!(r.case, PhiCase::CircleCase2);
    let r = circle_palette(&[1, 2, 3]);
    assert!(r.overfull);
    assert_eq!(r.palette, pal(&[1, 2, 3]));
}

#[test]
fn line_cases() {
    assert_eq!(line_palette(&[], &[4]).palette, pal(&[4]));
    let r = line_palette(&[2], &[4, 6]);
    assert_eq!((r.palette, r.case), (pal(&[2, 4, 6]), PhiCase::LineCase1));
    let r = line_palette(&[4], &[4, 6]);
    assert_eq!((r.palette, r.case), (pal(&[6]), PhiCase::LineCase2));
}

#[test]
fn mutant_tags_round_trip() {
    for m in Mutant::ALL_TAGS {
        assert_eq!(m.tag().parse::<Mutant>().unwrap(), m);
        assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.tag()));
    }
    assert!("COND_99".parse::<Mutant>().is_err());
}

#[test]
fn fresh_batch_gets_even_colors() {
    let reg = LevelRegistry::with_seeds(vec![Point::int(0, 0), Point::int(5, 1), Point::int(2, 9)], false).unwrap();
    let mut st = ColorState::new(Enforcement::default());
    color_batch(&mut st, &reg, 1).unwrap();
    assert_eq!(st.colors, vec![Some(0), Some(2), Some(4)]);
}

#[test]
fn condition_7_skips_complement() {
    let mut reg = LevelRegistry::with_seeds(vec![Point::int(0, 0), Point::int(4, 0), Point::int(1, 3)], false).unwrap();
    let born = reg.generate_curves(1);
    reg.derive_points(1, 1, 0);
    let x = reg.batch(2).start;
    let mut st = ColorState::new(Enforcement {
        cond_12: false,
        antipode_guard: false,
        ..Enforcement::default()
    });
    for c in born {
        st.set_palette(c, circle_palette(&[]));
    }
    let line = reg
        .prior_curves_through(x)
        .into_iter()
        .find(|&c| reg.curve(c).curve.is_line())
        .expect("derived point lies on a line");
    st.set_palette(line, line_palette(&[0, 2], &[]));
    color_batch(&mut st, &reg, 2).unwrap();
    assert_eq!(st.color(x), Some(1));
}

#[test]
fn condition_12_exclusion_skips_zero() {
    // x = (0,0) derived on the prior line y = 0; (0,5) is on x = 0.
    let mut reg = LevelRegistry::with_seeds(vec![Point::int(4, 0), Point::int(0, 5), Point::int(-4, 0)], false).unwrap();
    let born = reg.generate_curves(1);
    let mut st = ColorState::new(Enforcement {
        antipode_guard: false,
        ..Enforcement::default()
    });
    st.set_color(0, 3);
    st.set_color(1, 0);
    st.set_color(2, 9);
    for c in born {
        st.set_palette(c, circle_palette(&[]));
    }
    reg.derive_points(1, usize::MAX, 0);
    let x = reg.find_point(&Point::int(0, 0)).unwrap();
    assert!(disqualified_colors(&st, &reg, x).contains(&0));
    color_batch(&mut st, &reg, 2).unwrap();
    if reg.batch(2).start == x {
        assert_eq!(st.color(x), Some(1));
    }
    assert_ne!(st.color(x), Some(0));
}

#[test]
fn disqualified_from_perpendicular() {
    // Seeds (0,0), (4,0), (0,5): the perpendicular to the x-axis at the
    // origin is x = 0, which holds (0,5).
    let mut reg = LevelRegistry::with_seeds(vec![Point::int(4, 0), Point::int(0, 5), Point::int(-4, 0)], false).unwrap();
    let born = reg.generate_curves(1);
    let mut st = ColorState::new(Enforcement::default());
    st.set_color(0, 3);
    st.set_color(1, 7);
    st.set_color(2, 9);
    for c in born {
        st.set_palette(c, circle_palette(&[]));
    }
    reg.derive_points(1, usize::MAX, 0);
    let x = reg.find_point(&Point::int(0, 0)).expect("origin derived");
    let d = disqualified_colors(&st, &reg, x);
    assert!(d.contains(&7), "{d:?}");
    assert!(!d.contains(&3) && !d.contains(&9));
}

#[test]
fn disqualified_vacuous_cases() {
    let reg = LevelRegistry::with_seeds(vec![Point::int(0, 0)], false).unwrap();
    let st = ColorState::new(Enforcement::default());
    assert!(disqualified_colors(&st, &reg, 0).is_empty());

    // (1,1) on y = x, nothing older on x + y = 2.
    let mut reg = LevelRegistry::with_seeds(vec![Point::int(0, 0), Point::int(3, 3)], false).unwrap();
    let born = reg.generate_curves(1);
    let mut st = ColorState::new(Enforcement::default());
    st.set_color(0, 0);
    st.set_color(1, 2);
    for c in born {
        st.set_palette(c, circle_palette(&[]));
    }
    reg.derive_points(1, usize::MAX, 0);
    if let Some(x) = reg.find_point(&Point::int(1, 1)) {
        assert!(disqualified_colors(&st, &reg, x).is_empty());
    }
}

#[test]
fn single_seed_run() {
    let cfg = ClosureConfig {
        max_level: 3,
        budget: 10,
        seed: 0,
    };
    let run = run_construction(vec![Point::int(0, 0)], &cfg, Enforcement::default(), false).unwrap();
    assert_eq!(run.state.colors, vec![Some(0)]);
    assert_eq!(run.registry.num_curves(), 0);
}

#[test]
fn construction_is_total_and_batches_are_gapped() {
    let cfg = ClosureConfig {
        max_level: 3,
        budget: 30,
        seed: 0,
    };
    let seeds = vec![Point::int(0, 0), Point::int(2, 0), Point::int(0, 2), Point::int(3, 1)];
    let run = run_construction(seeds, &cfg, Enforcement::default(), false).unwrap();
    let reg = &run.registry;
    assert!(run.state.colors.iter().all(Option::is_some));
    assert_eq!(run.state.colors.len(), reg.num_points());
    assert_eq!(run.state.palettes.len(), reg.num_curves());
    assert!(run.state.palettes.iter().all(Option::is_some));
    for level in 1..=3 {
        let mut cs: Vec<Color> = reg.batch(level).map(|p| run.state.color(p).unwrap()).collect();
        cs.sort_unstable();
        assert!(cs.windows(2).all(|w| w[1] >= w[0] + 2), "level {level}: {cs:?}");
    }
    // (7) on every point.
    for p in 0..reg.num_points() as PointId {
        for e in reg.prior_curves_through(p) {
            assert!(run.state.palette(e).unwrap().contains(run.state.color(p).unwrap()));
        }
    }
}

#[test]
fn mutants_change_the_coloring() {
    let cfg = ClosureConfig {
        max_level: 2,
        budget: 10,
        seed: 0,
    };
    let seeds = vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1)];
    let all = run_construction(seeds.clone(), &cfg, Mutant::All.enforcement(), false).unwrap();
    assert!(all.state.colors.iter().all(|c| *c == Some(0)));
    let gap = run_construction(seeds.clone(), &cfg, Mutant::GapRule.enforcement(), false).unwrap();
    assert_eq!(&gap.state.colors[..3], &[Some(0), Some(1), Some(2)]);
    let phi = run_construction(seeds, &cfg, Mutant::PhiCases.enforcement(), false).unwrap();
    assert!(phi.state.palettes.iter().flatten().all(|r| r.palette.is_full()));
}
