//! Text formats: point lists, coloring dumps (CSV and JSON), registry dumps.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{from_expr, parse_rational, to_json, Real};
use crate::closure::{ClosureError, CurveId, LevelRegistry, PointId, Provenance};
use crate::coloring::{Color, ColorState, Enforcement, Palette, PaletteRecord, PhiCase};
use crate::geometry::{Circle, Curve, Line, Point, PointTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct InputError {
    pub line: usize,
    pub msg: String,
}

/// Parses one point per line, `x,y` with each coordinate `p/q`, an integer
/// or an exact decimal. `#` starts a comment; blank lines are skipped.
/// Duplicates are an error unless `allow_duplicates`, in which case later
/// copies are dropped.
pub fn parse_points(text: &str, allow_duplicates: bool) -> Result<Vec<Point>, InputError> {
    let mut out: Vec<Point> = Vec::new();
    let mut lines_of = Vec::new();
    let mut table = PointTable::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| InputError { line, msg };
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
            return Err(err(format!("expected `x,y`, got `{body}`")));
        }
        let x = parse_rational(fields[0]).map_err(|e| err(e.to_string()))?;
        let y = parse_rational(fields[1]).map_err(|e| err(e.to_string()))?;
        let p = Point::new(Real::from(x), Real::from(y));
        if let Some(j) = table.find(&p, |j| &out[j as usize]) {
            if allow_duplicates {
                continue;
            }
            return Err(err(format!("duplicate of the point on line {}", lines_of[j as usize])));
        }
        let key = table.classify(&p);
        table.insert(&p, key.as_ref(), out.len() as u32);
        out.push(p);
        lines_of.push(line);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("point {0} has an irrational coordinate and cannot be written as `x,y`")]
pub struct NotRational(pub usize);

/// Inverse of [`parse_points`] for rational points.
pub fn format_points(points: &[Point]) -> Result<String, NotRational> {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        match (p.x.as_rational(), p.y.as_rational()) {
            (Some(x), Some(y)) => s.push_str(&format!("{x},{y}\n")),
            _ => return Err(NotRational(i)),
        }
    }
    Ok(s)
}

/// CSV dump `id,x,y,level,batch_index,color` of every registered point.
pub fn coloring_csv(state: &ColorState, reg: &LevelRegistry) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "x", "y", "level", "batch_index", "color"]).expect("in-memory write");
    for (i, rec) in reg.points().iter().enumerate() {
        let color = state.color(i as PointId).map_or(String::new(), |c| c.to_string());
        w.write_record([
            i.to_string(),
            rec.point.x.to_string(),
            rec.point.y.to_string(),
            rec.level.to_string(),
            rec.batch_index.to_string(),
            color,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocPoint {
    pub id: PointId,
    pub x: Value,
    pub y: Value,
    pub level: u32,
    pub batch_index: u32,
    pub color: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocCurve {
    pub id: CurveId,
    /// `line` (`[a, b, c]`) or `circle` (`[cx, cy, r²]`).
    pub kind: String,
    pub params: [Value; 3],
    pub birth: u32,
    pub complement: Option<Vec<Color>>,
    pub case: Option<PhiCase>,
}

/// The JSON coloring dump; [`ColoringDoc::load`] restores it for
/// verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub format: String,
    pub points: Vec<DocPoint>,
    pub curves: Vec<DocCurve>,
}

pub const COLORING_FORMAT: &str = "planecolor-coloring/1";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("unsupported format `{0}`")]
    Format(String),
    #[error("{what} {id}: {msg}")]
    Entry { what: &'static str, id: u32, msg: String },
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

impl ColoringDoc {
    pub fn new(state: &ColorState, reg: &LevelRegistry) -> ColoringDoc {
        let points = reg
            .points()
            .iter()
            .enumerate()
            .map(|(i, r)| DocPoint {
                id: i as PointId,
                x: to_json(&r.point.x),
                y: to_json(&r.point.y),
                level: r.level,
                batch_index: r.batch_index,
                color: state.color(i as PointId),
            })
            .collect();
        let curves = reg
            .curves()
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let birth = r.birth?;
                let (kind, params) = match &r.curve {
                    Curve::Line(l) => ("line", [to_json(&l.a), to_json(&l.b), to_json(&l.c)]),
                    Curve::Circle(k) => ("circle", [to_json(&k.center.x), to_json(&k.center.y), to_json(&k.r2)]),
                };
                let rec = state.palettes.get(i).and_then(Option::as_ref);
                Some(DocCurve {
                    id: i as CurveId,
                    kind: kind.into(),
                    params,
                    birth,
                    complement: rec.map(|r| r.palette.complement().to_vec()),
                    case: rec.map(|r| r.case),
                })
            })
            .collect();
        ColoringDoc {
            format: COLORING_FORMAT.into(),
            points,
            curves,
        }
    }

    /// Rebuilds a registry (points, curves, levels) and a color state. Ids
    /// are reassigned densely in file order.
    pub fn load(&self) -> Result<(LevelRegistry, ColorState), LoadError> {
        if self.format != COLORING_FORMAT {
            return Err(LoadError::Format(self.format.clone()));
        }
        let real = |what, id, v: &Value| {
            from_expr(v).map_err(|e| LoadError::Entry {
                what,
                id,
                msg: e.to_string(),
            })
        };
        let mut pts = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let pt = Point::new(real("point", p.id, &p.x)?, real("point", p.id, &p.y)?);
            pts.push((pt, p.level, p.batch_index));
        }
        let mut curves = Vec::with_capacity(self.curves.len());
        for c in &self.curves {
            let [a, b, d] = [&c.params[0], &c.params[1], &c.params[2]].map(|v| real("curve", c.id, v));
            let entry = |msg: String| LoadError::Entry {
                what: "curve",
                id: c.id,
                msg,
            };
            let curve = match c.kind.as_str() {
                "line" => Curve::from(Line::new(a?, b?, d?).map_err(|e| entry(e.to_string()))?),
                "circle" => Curve::from(Circle::new(Point::new(a?, b?), d?).map_err(|e| entry(e.to_string()))?),
                k => return Err(entry(format!("unknown curve kind `{k}`"))),
            };
            curves.push((curve, c.birth));
        }
        let reg = LevelRegistry::import(pts, curves)?;
        let mut state = ColorState::new(Enforcement::default());
        for (i, p) in self.points.iter().enumerate() {
            if let Some(c) = p.color {
                state.set_color(i as PointId, c);
            }
        }
        for (i, c) in self.curves.iter().enumerate() {
            if let Some(comp) = &c.complement {
                state.set_palette(
                    i as CurveId,
                    PaletteRecord {
                        palette: Palette::excluding(comp.iter().copied()),
                        case: c.case.unwrap_or(PhiCase::Unconstrained),
                        overfull: false,
                    },
                );
            }
        }
        Ok((reg, state))
    }
}

#[derive(Serialize)]
struct DumpEntry<'a> {
    kind: &'static str,
    id: u32,
    level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    batch_index: Option<u32>,
    rule: Option<u8>,
    provenance: &'a Provenance,
    parent_points: Vec<PointId>,
    parent_curves: Vec<CurveId>,
}

/// One JSON object per line: every point, then every curve.
pub fn registry_jsonl(reg: &LevelRegistry) -> String {
    let mut out = String::new();
    let mut push = |e: DumpEntry| {
        out.push_str(&serde_json::to_string(&e).expect("plain data"));
        out.push('\n');
    };
    for (i, p) in reg.points().iter().enumerate() {
        push(DumpEntry {
            kind: "point",
            id: i as u32,
            level: Some(p.level),
            batch_index: Some(p.batch_index),
            rule: p.provenance.rule(),
            provenance: &p.provenance,
            parent_points: p.provenance.parent_points(),
            parent_curves: p.provenance.parent_curves(),
        });
    }
    for (i, c) in reg.curves().iter().enumerate() {
        push(DumpEntry {
            kind: if c.curve.is_line() { "line" } else { "circle" },
            id: i as u32,
            level: c.birth,
            batch_index: None,
            rule: c.provenance.rule(),
            provenance: &c.provenance,
            parent_points: c.provenance.parent_points(),
            parent_curves: c.provenance.parent_curves(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureConfig;
    use crate::coloring::run_construction;

    fn q(s: &str) -> Real {
        Real::from(parse_rational(s).unwrap())
    }

    #[test]
    fn parses_the_grammar() {
        let pts = parse_points("0,0\n1/2,3/4\n", false).unwrap();
        assert_eq!(pts, vec![Point::int(0, 0), Point::new(q("1/2"), q("3/4"))]);
        assert_eq!(parse_points("0.25,1", false).unwrap(), vec![Point::new(q("1/4"), q("1"))]);
        assert_eq!(parse_points("# header\n\n 2 , -3 # trailing\n", false).unwrap(), vec![Point::int(2, -3)]);
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_points("1,,2", false).unwrap_err().line, 1);
        assert_eq!(parse_points("0,0\n\n1/0,2", false).unwrap_err().line, 3);
        assert_eq!(parse_points("0,0\nx,1", false).unwrap_err().line, 2);
        let dup = parse_points("0,0\n1,1\n0/5,0.0\n", false).unwrap_err();
        assert_eq!(dup.line, 3);
        assert!(dup.msg.contains("line 1"));
        assert_eq!(parse_points("0,0\n0,0\n", true).unwrap().len(), 1);
    }

    #[test]
    fn points_round_trip() {
        let pts = crate::corpus::random_rational(25, 4, 17);
        assert_eq!(parse_points(&format_points(&pts).unwrap(), false).unwrap(), pts);
        let irr = vec![Point::new(Real::int(2).sqrt().unwrap(), Real::zero())];
        assert!(format_points(&irr).is_err());
    }

    #[test]
    fn coloring_doc_round_trip() {
        let cfg = ClosureConfig {
            max_level: 2,
            budget: 12,
            seed: 0,
        };
        let run = run_construction(crate::corpus::grid(3), &cfg, Enforcement::default(), false).unwrap();
        let doc = ColoringDoc::new(&run.state, &run.registry);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ColoringDoc = serde_json::from_str(&text).unwrap();
        let (reg, state) = back.load().unwrap();
        assert_eq!(reg.num_points(), run.registry.num_points());
        assert_eq!(reg.num_curves(), run.registry.num_curves());
        assert_eq!(state.colors, run.state.colors);
        for i in 0..reg.num_curves() {
            assert_eq!(reg.curve(i as CurveId).curve, run.registry.curve(i as CurveId).curve);
            assert_eq!(state.palette(i as CurveId), run.state.palette(i as CurveId));
        }
        assert_eq!(ColoringDoc::new(&state, &reg), doc);
    }

    #[test]
    fn csv_header_and_rows() {
        let cfg = ClosureConfig::default();
        let run = run_construction(vec![Point::int(0, 0), Point::new(q("1/2"), q("3"))], &cfg, Enforcement::default(), false).unwrap();
        let csv = coloring_csv(&run.state, &run.registry);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id,x,y,level,batch_index,color");
        assert_eq!(lines[1], "0,0,0,1,0,0");
        assert_eq!(lines[2], "1,1/2,3,1,1,2");
    }

    #[test]
    fn registry_dump_has_one_line_per_entity() {
        let run = run_construction(crate::corpus::grid(2), &ClosureConfig::default(), Enforcement::default(), false).unwrap();
        let dump = registry_jsonl(&run.registry);
        assert_eq!(dump.lines().count(), run.registry.num_points() + run.registry.num_curves());
        let first: Value = serde_json::from_str(dump.lines().next().unwrap()).unwrap();
        assert_eq!(first["kind"], "point");
        assert_eq!(first["level"], 1);
        let last: Value = serde_json::from_str(dump.lines().last().unwrap()).unwrap();
        assert_eq!(last["rule"], 5);
    }
}
