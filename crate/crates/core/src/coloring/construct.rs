use std::time::{Duration, Instant};

use serde::Serialize;

use super::{assign_palettes, color_batch, ColorState, ColoringError, Enforcement};
use crate::closure::{ClosureConfig, ClosureError, LevelRegistry};
use crate::geometry::Point;

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LevelStats {
    pub level: u32,
    pub points: usize,
    pub curves: usize,
    /// Derived-point budget of this level (0 for the seed level).
    pub budget: usize,
    /// The derivation stopped at the budget rather than running dry.
    pub budget_exhausted: bool,
    pub max_color: Option<u32>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ConstructionStats {
    pub levels: Vec<LevelStats>,
    pub completion_curves: usize,
    /// Palettes flagged by the over-full circle/line handling.
    pub overfull_palettes: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub struct Construction {
    pub registry: LevelRegistry,
    pub state: ColorState,
    pub stats: ConstructionStats,
}

/// Seeds level 1, then per level: derive points from the previous level's
/// curves, color the batch, generate curves, assign their palettes. A final
/// completion pass generates curves once more over all colored points.
pub fn run_construction(
    seeds: Vec<Point>,
    cfg: &ClosureConfig,
    enforcement: Enforcement,
    allow_duplicates: bool,
) -> Result<Construction, ConstructionError> {
    let t0 = Instant::now();
    let mut reg = LevelRegistry::with_seeds(seeds, allow_duplicates)?;
    let mut state = ColorState::new(enforcement);
    let mut stats = ConstructionStats::default();
    let max_level = cfg.max_level.max(1);
    for level in 1..=max_level {
        let budget = cfg.budget_for(level);
        let derived = if level > 1 {
            let seed = if cfg.seed == 0 { 0 } else { cfg.seed.wrapping_add(level as u64) };
            reg.derive_points(level - 1, budget, seed).len()
        } else {
            0
        };
        color_batch(&mut state, &reg, level)?;
        let born = reg.generate_curves(level);
        let curves = born.len();
        assign_palettes(&mut state, &reg, born, level);
        let batch = reg.batch(level);
        stats.levels.push(LevelStats {
            level,
            points: batch.len(),
            curves,
            budget,
            budget_exhausted: level > 1 && budget > 0 && derived == budget,
            max_color: batch.filter_map(|p| state.color(p)).max(),
        });
    }
    let born = reg.generate_curves(max_level);
    stats.completion_curves = born.len();
    assign_palettes(&mut state, &reg, born, max_level);
    stats.overfull_palettes = state.palettes.iter().flatten().filter(|r| r.overfull).count();
    stats.elapsed = t0.elapsed();
    Ok(Construction {
        registry: reg,
        state,
        stats,
    })
}
