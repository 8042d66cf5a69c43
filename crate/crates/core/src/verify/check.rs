use std::collections::BTreeMap;

use super::{witness_curve, Severity, ViolationKind, ViolationReport, Witness};
use crate::closure::{CurveId, LevelRegistry, PointId};
use crate::coloring::{Color, ColorState};
use crate::geometry::rational::{rat_circumcircle, rat_line_through, rat_thales, RatPoint};
use crate::geometry::{
    circumcircle, collinear, line_through, perpendicular_at, reflect, thales_circle, Curve,
    CurveTable, PointTable,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Strict mode: points on several prior curves and out-of-scope (11)
    /// findings are errors.
    pub strict: bool,
}

/// Incidence of colored points and registered curves, rebuilt from scratch
/// by re-running the pair and triple constructions.
struct Incidence<'a> {
    reg: &'a LevelRegistry,
    table: CurveTable,
    on: Vec<Vec<PointId>>,
    /// `(x, l, l')`: the perpendicular `l'` to line `l` at `x`.
    perps: Vec<(PointId, CurveId, CurveId)>,
    reports: Vec<ViolationReport>,
}

impl<'a> Incidence<'a> {
    fn lookup(&self, c: &Curve) -> Option<CurveId> {
        self.table.find(c, |id| &self.reg.curve(id).curve)
    }

    fn hit(&mut self, found: Option<CurveId>, what: &str, pts: &[PointId], build: impl FnOnce() -> Option<Curve>, w: &Witness) {
        match found {
            Some(id) => {
                for &p in pts {
                    self.on[id as usize].push(p);
                }
            }
            None => {
                let mut r = w.report(
                    ViolationKind::Exhaustiveness,
                    Severity::Error,
                    format!("{what} of the witness points is not registered"),
                    pts,
                    &[],
                );
                if let Some(c) = build() {
                    r.curves.push(witness_curve(&c));
                }
                self.reports.push(r);
            }
        }
    }
}

fn build_incidence<'a>(reg: &'a LevelRegistry, colored: &[PointId], w: &Witness) -> Incidence<'a> {
    let mut table = CurveTable::new();
    let mut reports = Vec::new();
    let curves = reg.curves();
    for (i, rec) in curves.iter().enumerate() {
        let key = table.classify(&rec.curve);
        let dup = match &key {
            Some(k) => table.find_key(k, |id| &curves[id as usize].curve),
            None => table.find(&rec.curve, |id| &curves[id as usize].curve),
        };
        if let Some(first) = dup {
            reports.push(w.report(
                ViolationKind::Duplicate,
                Severity::Error,
                "two registered curves are equal".into(),
                &[],
                &[first, i as CurveId],
            ));
            continue;
        }
        table.insert(&rec.curve, key.as_ref(), i as CurveId);
    }
    let mut inc = Incidence {
        reg,
        table,
        on: vec![Vec::new(); curves.len()],
        perps: Vec::new(),
        reports,
    };

    let mut ptable = PointTable::new();
    let mut rat: Vec<Option<RatPoint>> = Vec::with_capacity(colored.len());
    for (k, &p) in colored.iter().enumerate() {
        let pt = &reg.point(p).point;
        if let Some(first) = ptable.find(pt, |j| &reg.point(colored[j as usize]).point) {
            inc.reports.push(w.report(
                ViolationKind::Duplicate,
                Severity::Error,
                "two registered points are equal".into(),
                &[colored[first as usize], p],
                &[],
            ));
        }
        let key = ptable.classify(pt);
        ptable.insert(pt, key.as_ref(), k as u32);
        rat.push(key);
    }

    let pt = |k: usize| &reg.point(colored[k]).point;
    let n = colored.len();
    for j in 0..n {
        for i in 0..j {
            let ids = [colored[i], colored[j]];
            let (line, thales) = match (&rat[i], &rat[j]) {
                (Some(a), Some(b)) => (
                    inc.table.find_key(&rat_line_through(a, b), |id| &curves[id as usize].curve),
                    inc.table.find_key(&rat_thales(a, b), |id| &curves[id as usize].curve),
                ),
                _ => (
                    line_through(pt(i), pt(j)).ok().and_then(|l| inc.lookup(&l.into())),
                    thales_circle(pt(i), pt(j)).ok().and_then(|c| inc.lookup(&c.into())),
                ),
            };
            inc.hit(line, "connecting line", &ids, || line_through(pt(i), pt(j)).ok().map(Curve::from), w);
            inc.hit(thales, "Thales circle", &ids, || thales_circle(pt(i), pt(j)).ok().map(Curve::from), w);
        }
    }
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let found = match (&rat[i], &rat[j], &rat[k]) {
                    (Some(a), Some(b), Some(c)) => match rat_circumcircle(a, b, c) {
                        Some(key) => inc.table.find_key(&key, |id| &curves[id as usize].curve),
                        None => continue,
                    },
                    _ => {
                        if collinear(pt(i), pt(j), pt(k)) {
                            continue;
                        }
                        circumcircle(pt(i), pt(j), pt(k)).ok().and_then(|c| inc.lookup(&c.into()))
                    }
                };
                let ids = [colored[i], colored[j], colored[k]];
                inc.hit(found, "circumcircle", &ids, || circumcircle(pt(i), pt(j), pt(k)).ok().map(Curve::from), w);
            }
        }
    }
    for v in &mut inc.on {
        v.sort_unstable();
        v.dedup();
    }
    // Rule (5): a perpendicular may carry no colored point besides its foot,
    // so its incidence comes from this pass alone.
    let mut lines_through: Vec<Vec<CurveId>> = vec![Vec::new(); reg.num_points()];
    for (c, pts) in inc.on.iter().enumerate() {
        if curves[c].curve.is_line() {
            for &p in pts {
                lines_through[p as usize].push(c as CurveId);
            }
        }
    }
    for &x in colored {
        let xp = &reg.point(x).point;
        for &l in &lines_through[x as usize] {
            let line = curves[l as usize].curve.as_line().expect("filtered to lines");
            let perp = Curve::from(perpendicular_at(line, xp).expect("incidence was recomputed exactly"));
            match inc.lookup(&perp) {
                Some(lp) => {
                    inc.perps.push((x, l, lp));
                    if let Err(at) = inc.on[lp as usize].binary_search(&x) {
                        inc.on[lp as usize].insert(at, x);
                    }
                }
                None => {
                    let mut r = w.report(
                        ViolationKind::Exhaustiveness,
                        Severity::Error,
                        "perpendicular at a point of a registered line is not registered".into(),
                        &[x],
                        &[l],
                    );
                    r.curves.push(witness_curve(&perp));
                    inc.reports.push(r);
                }
            }
        }
    }
    inc
}

struct Ctx<'a> {
    state: &'a ColorState,
    reg: &'a LevelRegistry,
    w: Witness<'a>,
    opts: CheckOptions,
    out: Vec<ViolationReport>,
}

impl Ctx<'_> {
    fn color(&self, p: PointId) -> Color {
        self.state.color(p).expect("only colored points are checked")
    }

    fn level(&self, p: PointId) -> u32 {
        self.reg.point(p).level
    }

    fn birth(&self, c: CurveId) -> u32 {
        self.reg.curve(c).birth.unwrap_or(u32::MAX)
    }

    fn allows(&self, c: CurveId, color: Color) -> bool {
        self.state.palette(c).is_none_or(|p| p.contains(color))
    }

    fn push(&mut self, kind: ViolationKind, severity: Severity, detail: String, pts: &[PointId], curves: &[CurveId]) {
        let r = self.w.report(kind, severity, detail, pts, curves);
        self.out.push(r);
    }

    fn relaxed(&self) -> Severity {
        if self.opts.strict {
            Severity::Error
        } else {
            Severity::Warning
        }
    }
}

/// Re-checks conditions (6)–(12), the palette definitions, exhaustiveness
/// of rules (1), (2), (5) and the one-prior-curve property against a
/// finished state.
pub fn check_conditions(state: &ColorState, reg: &LevelRegistry, opts: CheckOptions) -> Vec<ViolationReport> {
    let colored: Vec<PointId> = (0..reg.num_points() as PointId)
        .filter(|&p| state.color(p).is_some())
        .collect();
    let w = Witness { state, reg };
    let inc = build_incidence(reg, &colored, &w);
    let on = inc.on;
    let perps = inc.perps;
    let mut cx = Ctx {
        state,
        reg,
        w,
        opts,
        out: inc.reports,
    };
    let mut through: Vec<Vec<CurveId>> = vec![Vec::new(); reg.num_points()];
    for (c, pts) in on.iter().enumerate() {
        for &p in pts {
            through[p as usize].push(c as CurveId);
        }
    }

    check_batches(&mut cx, &colored);
    for (c, pts) in on.iter().enumerate() {
        let c = c as CurveId;
        check_palette_law(&mut cx, c, pts);
        check_curve_counts(&mut cx, c, pts);
    }
    for &x in &colored {
        let mine = &through[x as usize];
        let lx = cx.level(x);
        let f = cx.color(x);
        let prior: Vec<CurveId> = mine.iter().copied().filter(|&e| cx.birth(e) < lx).collect();
        for &e in &prior {
            if !cx.allows(e, f) {
                cx.push(ViolationKind::Cond7, Severity::Error, format!("color {f} is outside the palette of an older curve"), &[x], &[e]);
            }
        }
        if prior.len() > 1 {
            let sev = cx.relaxed();
            cx.push(
                ViolationKind::Claim2Strict,
                sev,
                format!("point lies on {} older curves", prior.len()),
                &[x],
                &prior,
            );
        }
    }
    for (x, l, lp) in perps {
        check_perpendicular(&mut cx, x, l, lp, &on);
    }
    cx.out
}

fn check_batches(cx: &mut Ctx, colored: &[PointId]) {
    let mut batches: BTreeMap<u32, Vec<(Color, PointId)>> = BTreeMap::new();
    for &p in colored {
        batches.entry(cx.level(p)).or_default().push((cx.color(p), p));
    }
    for (level, mut b) in batches {
        b.sort_unstable();
        for win in b.windows(2) {
            let [(c0, p0), (c1, p1)] = [win[0], win[1]];
            if c0 == c1 {
                cx.push(ViolationKind::Cond6, Severity::Error, format!("level {level}: color {c0} repeats within the batch"), &[p0, p1], &[]);
            } else if c1 < c0 + 2 {
                cx.push(ViolationKind::Cond6, Severity::Error, format!("level {level}: gap rule fails between colors {c0} and {c1}"), &[p0, p1], &[]);
            }
        }
    }
}

fn check_palette_law(cx: &mut Ctx, c: CurveId, pts: &[PointId]) {
    let birth = cx.birth(c);
    let older: Vec<Color> = pts.iter().filter(|&&p| cx.level(p) < birth).map(|&p| cx.color(p)).collect();
    let mut expected: Vec<Color> = if cx.reg.curve(c).curve.is_line() {
        let batch: Vec<Color> = pts.iter().filter(|&&p| cx.level(p) == birth).map(|&p| cx.color(p)).collect();
        if older.len() == 1 && batch.contains(&older[0]) {
            batch.into_iter().filter(|&i| i != older[0]).collect()
        } else {
            older.into_iter().chain(batch).collect()
        }
    } else if older.len() == 2 && older[0] == older[1] {
        Vec::new()
    } else {
        older
    };
    expected.sort_unstable();
    expected.dedup();
    match cx.state.palette(c) {
        None => cx.push(ViolationKind::PaletteLaw, Severity::Error, "curve has no palette".into(), &[], &[c]),
        Some(p) if p.complement() != expected.as_slice() => {
            cx.push(
                ViolationKind::PaletteLaw,
                Severity::Error,
                format!("palette complement {:?}, definitions give {:?}", p.complement(), expected),
                pts,
                &[c],
            );
        }
        Some(_) => {}
    }
}

/// Conditions (8), (9), (10) on one curve.
fn check_curve_counts(cx: &mut Ctx, c: CurveId, pts: &[PointId]) {
    let mut by_color: BTreeMap<Color, Vec<PointId>> = BTreeMap::new();
    for &p in pts {
        by_color.entry(cx.color(p)).or_default().push(p);
    }
    let curve = &cx.reg.curve(c).curve;
    let is_line = curve.is_line();
    let center = curve.as_circle().map(|k| k.center.clone());
    for (col, same) in by_color {
        let excluded = !cx.allows(c, col);
        if excluded {
            let (kind, cap) = if is_line { (ViolationKind::Cond10, 1) } else { (ViolationKind::Cond9, 2) };
            if same.len() > cap {
                cx.push(kind, Severity::Error, format!("{} points of excluded color {col}", same.len()), &same, &[c]);
            }
        } else if let Some(center) = &center {
            for (a, &x) in same.iter().enumerate().take(same.len() - 1) {
                let anti = reflect(&cx.reg.point(x).point, center);
                for &y in &same[a + 1..] {
                    if cx.reg.point(y).point == anti {
                        cx.push(ViolationKind::Cond8, Severity::Error, format!("antipodal pair of color {col}, which the palette allows"), &[x, y], &[c]);
                    }
                }
            }
        }
    }
}

/// Conditions (11) and (12) for the perpendicular `lp` to `l` at `x`.
fn check_perpendicular(cx: &mut Ctx, x: PointId, l: CurveId, lp: CurveId, on: &[Vec<PointId>]) {
    let lx = cx.level(x);
    let f = cx.color(x);
    if l < lp && cx.allows(l, f) && cx.allows(lp, f) {
        let in_scope = lx <= cx.birth(l).max(cx.birth(lp));
        let sev = if in_scope { Severity::Error } else { cx.relaxed() };
        cx.push(ViolationKind::Cond11, sev, format!("color {f} allowed on both perpendicular lines"), &[x], &[l, lp]);
    }
    if cx.birth(l) < lx {
        for &y in &on[lp as usize] {
            if y != x && cx.level(y) < lx && cx.color(y) == f {
                cx.push(ViolationKind::Cond12, Severity::Error, format!("older point on the perpendicular shares color {f}"), &[x, y], &[l, lp]);
            }
        }
    }
}
