//! Static SVG plots. Coordinates are `f64` approximations, used for layout
//! only.

use std::fmt::Write;

use crate::closure::{LevelRegistry, PointId};
use crate::coloring::ColorState;
use crate::verify::ViolationReport;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

struct View {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl View {
    fn fit(pts: &[(f64, f64)]) -> View {
        if pts.is_empty() {
            return View { x0: 0.0, y0: 0.0, scale: 1.0 };
        }
        let (mut lx, mut ly, mut hx, mut hy) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in pts {
            lx = lx.min(x);
            ly = ly.min(y);
            hx = hx.max(x);
            hy = hy.max(y);
        }
        let span = (hx - lx).max(hy - ly).max(1e-9);
        View {
            x0: lx,
            y0: ly,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, SIZE - MARGIN - (y - self.y0) * self.scale)
    }

    /// World-space window that the canvas shows.
    fn window(&self) -> (f64, f64, f64, f64) {
        let w = SIZE / self.scale;
        let x = self.x0 - MARGIN / self.scale;
        let y = self.y0 - MARGIN / self.scale;
        (x, y, x + w, y + w)
    }
}

fn hue(color: u32) -> f64 {
    (color as f64 * 137.508) % 360.0
}

/// Clips `ax + by + c = 0` to the window; `None` when it misses.
fn clip_line(a: f64, b: f64, c: f64, (x0, y0, x1, y1): (f64, f64, f64, f64)) -> Option<[(f64, f64); 2]> {
    let mut hits = Vec::new();
    if b.abs() > 1e-300 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-300 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    (hits.len() >= 2).then(|| [hits[0], hits[hits.len() - 1]])
}

/// Renders points colored by color index over faint registered curves;
/// witnesses of `violations` are drawn on top in black.
pub fn emit_svg(state: &ColorState, reg: &LevelRegistry, violations: &[ViolationReport]) -> String {
    let approx: Vec<(f64, f64)> = reg.points().iter().map(|p| p.point.approx()).collect();
    let view = View::fit(&approx);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g id="curves" fill="none" stroke="#888" stroke-opacity="0.25" stroke-width="0.5">"##);
    for c in reg.curves() {
        let e = c.curve.key().1;
        let [p, q, r] = e.map(|v| v.mid());
        if c.curve.is_line() {
            if let Some([u, v]) = clip_line(p, q, r, view.window()) {
                let (ux, uy) = view.map(u);
                let (vx, vy) = view.map(v);
                let _ = writeln!(s, r#"<line x1="{ux:.2}" y1="{uy:.2}" x2="{vx:.2}" y2="{vy:.2}"/>"#);
            }
        } else {
            let (cx, cy) = view.map((p, q));
            let rad = r.max(0.0).sqrt() * view.scale;
            let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{rad:.2}"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="points" stroke="black" stroke-width="0.5">"#);
    for (i, &pt) in approx.iter().enumerate() {
        let (x, y) = view.map(pt);
        let fill = match state.color(i as PointId) {
            Some(c) => format!("hsl({:.1},70%,50%)", hue(c)),
            None => "white".into(),
        };
        let label = state.color(i as PointId).map_or("uncolored".to_string(), |c| format!("color {c}"));
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}"><title>{i}: {label}</title></circle>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="violations" fill="none" stroke="black" stroke-width="2.5">"#);
    for v in violations {
        let ids: Vec<usize> = v.points.iter().map(|w| w.id as usize).filter(|&i| i < approx.len()).collect();
        if ids.is_empty() {
            continue;
        }
        let path: Vec<String> = ids
            .iter()
            .map(|&i| {
                let (x, y) = view.map(approx[i]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(s, r#"<polygon points="{}"><title>{}</title></polygon>"#, path.join(" "), v.kind);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
