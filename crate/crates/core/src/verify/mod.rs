//! Independent verification of a finished coloring.
//!
//! Everything here is recomputed from coordinates, colors, levels and
//! palettes alone; the registry's provenance and incidence lists are never
//! consulted.

mod check;
mod mutation;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::to_json;
use crate::closure::{CurveId, LevelRegistry, PointId};
use crate::coloring::{Color, ColorState};
use crate::geometry::{Curve, Point};

pub use check::{check_conditions, CheckOptions};
pub use mutation::{mutation_suite, MutationOutcome};
pub use oracle::{find_mono_right_triangle, mono_right_triangle_report, MonoWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    MonoRightTriangle,
    #[serde(rename = "COND_6")]
    Cond6,
    #[serde(rename = "COND_7")]
    Cond7,
    #[serde(rename = "COND_8")]
    Cond8,
    #[serde(rename = "COND_9")]
    Cond9,
    #[serde(rename = "COND_10")]
    Cond10,
    #[serde(rename = "COND_11")]
    Cond11,
    #[serde(rename = "COND_12")]
    Cond12,
    #[serde(rename = "CLAIM_2_STRICT")]
    Claim2Strict,
    /// A palette differs from the Case 1/Case 2 recomputation.
    PaletteLaw,
    /// A line, Thales circle, circumcircle or perpendicular that rules
    /// (1), (2), (5) require is not registered.
    Exhaustiveness,
    /// Two registered points or curves are equal.
    Duplicate,
}

impl ViolationKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ViolationKind::MonoRightTriangle => "MONO_RIGHT_TRIANGLE",
            ViolationKind::Cond6 => "COND_6",
            ViolationKind::Cond7 => "COND_7",
            ViolationKind::Cond8 => "COND_8",
            ViolationKind::Cond9 => "COND_9",
            ViolationKind::Cond10 => "COND_10",
            ViolationKind::Cond11 => "COND_11",
            ViolationKind::Cond12 => "COND_12",
            ViolationKind::Claim2Strict => "CLAIM_2_STRICT",
            ViolationKind::PaletteLaw => "PALETTE_LAW",
            ViolationKind::Exhaustiveness => "EXHAUSTIVENESS",
            ViolationKind::Duplicate => "DUPLICATE",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessPoint {
    pub id: PointId,
    pub x: Value,
    pub y: Value,
    pub level: u32,
    pub color: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCurve {
    pub id: Option<CurveId>,
    /// `line` with `[a, b, c]` for `ax + by + c = 0`, or `circle` with
    /// `[cx, cy, r²]`.
    pub kind: String,
    pub params: [Value; 3],
    pub birth: Option<u32>,
    /// Complement of the palette; `None` when no palette is recorded.
    pub complement: Option<Vec<Color>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub severity: Severity,
    pub detail: String,
    pub points: Vec<WitnessPoint>,
    pub curves: Vec<WitnessCurve>,
}

impl ViolationReport {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// Builds witnesses from a finished state.
pub(crate) struct Witness<'a> {
    pub state: &'a ColorState,
    pub reg: &'a LevelRegistry,
}

impl Witness<'_> {
    pub fn point(&self, id: PointId) -> WitnessPoint {
        let rec = self.reg.point(id);
        witness_point(id, &rec.point, rec.level, self.state.color(id))
    }

    pub fn curve(&self, id: CurveId) -> WitnessCurve {
        let rec = self.reg.curve(id);
        let mut w = witness_curve(&rec.curve);
        w.id = Some(id);
        w.birth = rec.birth;
        w.complement = self.state.palette(id).map(|p| p.complement().to_vec());
        w
    }

    pub fn report(
        &self,
        kind: ViolationKind,
        severity: Severity,
        detail: String,
        points: &[PointId],
        curves: &[CurveId],
    ) -> ViolationReport {
        ViolationReport {
            kind,
            severity,
            detail,
            points: points.iter().map(|&p| self.point(p)).collect(),
            curves: curves.iter().map(|&c| self.curve(c)).collect(),
        }
    }
}

pub fn witness_point(id: PointId, p: &Point, level: u32, color: Option<Color>) -> WitnessPoint {
    WitnessPoint {
        id,
        x: to_json(&p.x),
        y: to_json(&p.y),
        level,
        color,
    }
}

pub fn witness_curve(c: &Curve) -> WitnessCurve {
    let (kind, params) = match c {
        Curve::Line(l) => ("line", [to_json(&l.a), to_json(&l.b), to_json(&l.c)]),
        Curve::Circle(k) => (
            "circle",
            [to_json(&k.center.x), to_json(&k.center.y), to_json(&k.r2)],
        ),
    };
    WitnessCurve {
        id: None,
        kind: kind.to_string(),
        params,
        birth: None,
        complement: None,
    }
}

/// Counts of reports by kind and severity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub errors: usize,
    pub warnings: usize,
    pub by_kind: std::collections::BTreeMap<String, KindCount>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCount {
    pub errors: usize,
    pub warnings: usize,
}

impl Summary {
    pub fn of(reports: &[ViolationReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            let e = s.by_kind.entry(r.kind.tag().to_string()).or_default();
            if r.is_error() {
                s.errors += 1;
                e.errors += 1;
            } else {
                s.warnings += 1;
                e.warnings += 1;
            }
        }
        s
    }

    pub fn errors_of(&self, kind: ViolationKind) -> usize {
        self.by_kind.get(kind.tag()).map_or(0, |e| e.errors)
    }
}

#[cfg(test)]
mod tests;
