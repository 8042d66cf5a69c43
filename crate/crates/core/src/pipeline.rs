//! Run configuration and the construct / verify flow shared by front ends.

use serde::{Deserialize, Serialize};

use crate::closure::{ClosureConfig, LevelRegistry};
use crate::coloring::{run_construction, ColorState, Construction, ConstructionError, ConstructionStats, Enforcement, Mutant};
use crate::corpus::CorpusSpec;
use crate::geometry::Point;
use crate::verify::{check_conditions, mono_right_triangle_report, CheckOptions, Summary, ViolationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputSource {
    File { path: String },
    Corpus { spec: CorpusSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Construct,
    Verify,
    Run,
    Mutate { mutant: Mutant },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub csv: Option<String>,
    pub json: Option<String>,
    pub svg: Option<String>,
    pub report: Option<String>,
    pub registry: Option<String>,
}

/// Everything that determines a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: InputSource,
    pub mode: Mode,
    pub closure: ClosureConfig,
    pub strict: bool,
    pub allow_duplicates: bool,
    pub workers: usize,
    pub outputs: Outputs,
}

impl RunConfig {
    pub fn enforcement(&self) -> Enforcement {
        match self.mode {
            Mode::Mutate { mutant } => mutant.enforcement(),
            _ => Enforcement::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub oracle: Option<ViolationReport>,
    pub summary: Summary,
    pub reports: Vec<ViolationReport>,
}

impl Verification {
    pub fn clean(&self) -> bool {
        self.oracle.is_none() && self.summary.errors == 0
    }
}

pub fn verify(state: &ColorState, reg: &LevelRegistry, strict: bool, workers: usize) -> Verification {
    let oracle = mono_right_triangle_report(state, reg, workers);
    let reports = check_conditions(state, reg, CheckOptions { strict });
    Verification {
        oracle,
        summary: Summary::of(&reports),
        reports,
    }
}

pub struct RunOutcome {
    pub construction: Construction,
    pub verification: Option<Verification>,
}

/// Constructs from `seeds`, verifying unless the mode is `Construct`.
pub fn execute(cfg: &RunConfig, seeds: Vec<Point>) -> Result<RunOutcome, ConstructionError> {
    let construction = run_construction(seeds, &cfg.closure, cfg.enforcement(), cfg.allow_duplicates)?;
    let verification = (cfg.mode != Mode::Construct)
        .then(|| verify(&construction.state, &construction.registry, cfg.strict, cfg.workers));
    Ok(RunOutcome {
        construction,
        verification,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
}

/// The JSON report: header (with the config and seed), construction
/// statistics, and verification results.
#[derive(Debug, Clone, Serialize)]
pub struct Report<'a> {
    pub header: ReportHeader<'a>,
    pub points: usize,
    pub curves: usize,
    pub stats: Option<&'a ConstructionStats>,
    pub verification: Option<&'a Verification>,
}

impl<'a> Report<'a> {
    pub fn new(
        cfg: &'a RunConfig,
        reg: &LevelRegistry,
        stats: Option<&'a ConstructionStats>,
        verification: Option<&'a Verification>,
    ) -> Report<'a> {
        Report {
            header: ReportHeader {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                config: cfg,
            },
            points: reg.num_points(),
            curves: reg.num_curves(),
            stats,
            verification,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}
