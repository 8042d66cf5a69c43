//! Batch coloring of points and palette assignment for new curves.

mod construct;
mod palette;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closure::{CurveId, LevelRegistry, PointId};
use crate::geometry::{perpendicular_at, reflect, Curve};

pub use construct::{run_construction, Construction, ConstructionError, ConstructionStats, LevelStats};
pub use palette::{circle_palette, line_palette, Palette, PhiCase};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("curve {curve} has no palette while coloring point {point}")]
    MissingPalette { curve: CurveId, point: PointId },
}

/// Which constraints the coloring enforces. Disabling one yields a mutant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enforcement {
    /// Color every point 0.
    pub constant: bool,
    /// Consecutive batch colors differ by at least 2 (otherwise by 1).
    pub gap_rule: bool,
    pub cond_7: bool,
    pub cond_12: bool,
    /// Palettes follow the Case 1/Case 2 definitions (otherwise all FULL).
    pub phi_cases: bool,
    /// Avoid the color of an already colored antipode on a prior circle.
    pub antipode_guard: bool,
}

impl Default for Enforcement {
    fn default() -> Self {
        Enforcement {
            constant: false,
            gap_rule: true,
            cond_7: true,
            cond_12: true,
            phi_cases: true,
            antipode_guard: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mutant {
    All,
    GapRule,
    #[serde(rename = "COND_7")]
    Cond7,
    #[serde(rename = "COND_12")]
    Cond12,
    PhiCases,
    AntipodeGuard,
}

impl Mutant {
    pub const ALL_TAGS: [Mutant; 6] = [
        Mutant::All,
        Mutant::GapRule,
        Mutant::Cond7,
        Mutant::Cond12,
        Mutant::PhiCases,
        Mutant::AntipodeGuard,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Mutant::All => "ALL",
            Mutant::GapRule => "GAP_RULE",
            Mutant::Cond7 => "COND_7",
            Mutant::Cond12 => "COND_12",
            Mutant::PhiCases => "PHI_CASES",
            Mutant::AntipodeGuard => "ANTIPODE_GUARD",
        }
    }

    pub fn enforcement(&self) -> Enforcement {
        let mut e = Enforcement::default();
        match self {
            Mutant::All => e.constant = true,
            Mutant::GapRule => e.gap_rule = false,
            Mutant::Cond7 => e.cond_7 = false,
            Mutant::Cond12 => e.cond_12 = false,
            Mutant::PhiCases => e.phi_cases = false,
            Mutant::AntipodeGuard => e.antipode_guard = false,
        }
        e
    }
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown mutant `{0}` (expected one of ALL, GAP_RULE, COND_7, COND_12, PHI_CASES, ANTIPODE_GUARD)")]
pub struct UnknownMutant(pub String);

impl FromStr for Mutant {
    type Err = UnknownMutant;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutant::ALL_TAGS
            .into_iter()
            .find(|m| m.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownMutant(s.to_string()))
    }
}

/// A palette with the case of the definition that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaletteRecord {
    pub palette: Palette,
    pub case: PhiCase,
    /// The older-point set exceeded the size the definitions expect
    /// (more than 2 on a circle, more than 1 on a line).
    pub overfull: bool,
}

/// Colors of points and palettes of curves, indexed by registry id.
#[derive(Debug, Clone, Default)]
pub struct ColorState {
    pub colors: Vec<Option<Color>>,
    pub palettes: Vec<Option<PaletteRecord>>,
    pub enforcement: Enforcement,
}

impl ColorState {
    pub fn new(enforcement: Enforcement) -> Self {
        ColorState {
            enforcement,
            ..Default::default()
        }
    }

    pub fn color(&self, p: PointId) -> Option<Color> {
        self.colors.get(p as usize).copied().flatten()
    }

    pub fn palette(&self, c: CurveId) -> Option<&Palette> {
        self.palettes.get(c as usize)?.as_ref().map(|r| &r.palette)
    }

    pub fn set_color(&mut self, p: PointId, c: Color) {
        let i = p as usize;
        if self.colors.len() <= i {
            self.colors.resize(i + 1, None);
        }
        self.colors[i] = Some(c);
    }

    pub fn set_palette(&mut self, c: CurveId, rec: PaletteRecord) {
        let i = c as usize;
        if self.palettes.len() <= i {
            self.palettes.resize(i + 1, None);
        }
        self.palettes[i] = Some(rec);
    }
}

/// Colors of older points on the perpendicular to each older line through
/// `x` at `x`.
pub fn disqualified_colors(state: &ColorState, reg: &LevelRegistry, x: PointId) -> BTreeSet<Color> {
    let level = reg.point(x).level;
    let xp = &reg.point(x).point;
    let mut out = BTreeSet::new();
    for l in reg.prior_curves_through(x) {
        let Some(line) = reg.curve(l).curve.as_line() else {
            continue;
        };
        let perp = Curve::from(perpendicular_at(line, xp).expect("incidence is exact"));
        if let Some(p) = reg.find_curve(&perp) {
            out.extend(
                reg.points_on(p)
                    .iter()
                    .filter(|&&y| y != x && reg.point(y).level < level)
                    .filter_map(|&y| state.color(y)),
            );
        }
    }
    out
}

/// Colors excluded at `x` by antipodes on older circles through `x`.
fn antipode_exclusions(state: &ColorState, reg: &LevelRegistry, x: PointId) -> Vec<Color> {
    let xp = &reg.point(x).point;
    reg.prior_curves_through(x)
        .into_iter()
        .filter_map(|c| reg.curve(c).curve.as_circle().map(|k| reflect(xp, &k.center)))
        .filter_map(|y| reg.find_point(&y))
        .filter_map(|y| state.color(y))
        .collect()
}

/// Colors the batch born at `level` in enumeration order, each point getting
/// the least admissible color.
pub fn color_batch(
    state: &mut ColorState,
    reg: &LevelRegistry,
    level: u32,
) -> Result<(), ColoringError> {
    let enf = state.enforcement;
    let mut batch_max: Option<Color> = None;
    for x in reg.batch(level) {
        if enf.constant {
            state.set_color(x, 0);
            continue;
        }
        let step = if enf.gap_rule { 2 } else { 1 };
        let floor = batch_max.map_or(0, |m| m + step);
        let mut excluded = BTreeSet::new();
        if enf.cond_7 {
            for e in reg.prior_curves_through(x) {
                let pal = state
                    .palette(e)
                    .ok_or(ColoringError::MissingPalette { curve: e, point: x })?;
                excluded.extend(pal.complement().iter().copied());
            }
        }
        if enf.cond_12 {
            excluded.extend(disqualified_colors(state, reg, x));
        }
        if enf.antipode_guard {
            excluded.extend(antipode_exclusions(state, reg, x));
        }
        let mut c = floor;
        for &e in excluded.range(floor..) {
            if e == c {
                c += 1;
            } else if e > c {
                break;
            }
        }
        state.set_color(x, c);
        batch_max = Some(batch_max.map_or(c, |m| m.max(c)));
    }
    Ok(())
}

/// Palette of a circle born at `level`: ω − f[A] for the older points A on
/// it, or FULL when A is two points of one color.
pub fn assign_phi_circle(state: &ColorState, reg: &LevelRegistry, c: CurveId, level: u32) -> PaletteRecord {
    let older: Vec<Color> = reg
        .points_on(c)
        .iter()
        .filter(|&&p| reg.point(p).level < level)
        .filter_map(|&p| state.color(p))
        .collect();
    palette::circle_palette(&older)
}

/// Palette of a line born at `level`, from the older points B on it and the
/// colors N of this level's batch points on it.
pub fn assign_phi_line(state: &ColorState, reg: &LevelRegistry, l: CurveId, level: u32) -> PaletteRecord {
    let mut older = Vec::new();
    let mut batch = Vec::new();
    for &p in reg.points_on(l) {
        let lv = reg.point(p).level;
        let Some(col) = state.color(p) else { continue };
        if lv < level {
            older.push(col);
        } else if lv == level {
            batch.push(col);
        }
    }
    palette::line_palette(&older, &batch)
}

/// Assigns palettes to the curves `ids`, all born at `level`.
pub fn assign_palettes(
    state: &mut ColorState,
    reg: &LevelRegistry,
    ids: impl IntoIterator<Item = CurveId>,
    level: u32,
) {
    for c in ids {
        let rec = if !state.enforcement.phi_cases {
            PaletteRecord {
                palette: Palette::full(),
                case: PhiCase::Unconstrained,
                overfull: false,
            }
        } else if reg.curve(c).curve.is_line() {
            assign_phi_line(state, reg, c, level)
        } else {
            assign_phi_circle(state, reg, c, level)
        };
        state.set_palette(c, rec);
    }
}

#[cfg(test)]
mod tests;
