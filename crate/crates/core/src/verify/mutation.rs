use serde::Serialize;

use super::{check_conditions, mono_right_triangle_report, CheckOptions, Summary, ViolationReport};
use crate::closure::ClosureConfig;
use crate::coloring::{run_construction, ConstructionError, Mutant};
use crate::geometry::Point;

#[derive(Debug, Clone, Serialize)]
pub struct MutationOutcome {
    pub mutant: Mutant,
    pub oracle: Option<ViolationReport>,
    pub summary: Summary,
    pub reports: Vec<ViolationReport>,
}

impl MutationOutcome {
    /// The mutant produced an oracle witness or a condition error.
    pub fn caught(&self) -> bool {
        self.oracle.is_some() || self.summary.errors > 0
    }
}

/// Reruns the construction with one enforcement disabled and verifies it.
pub fn mutation_suite(
    seeds: Vec<Point>,
    cfg: &ClosureConfig,
    mutant: Mutant,
    workers: usize,
) -> Result<MutationOutcome, ConstructionError> {
    let run = run_construction(seeds, cfg, mutant.enforcement(), false)?;
    let oracle = mono_right_triangle_report(&run.state, &run.registry, workers);
    let reports = check_conditions(&run.state, &run.registry, CheckOptions::default());
    Ok(MutationOutcome {
        mutant,
        oracle,
        summary: Summary::of(&reports),
        reports,
    })
}
