//! JSON run reports.
//!
//! A report is converted to a `serde_json::Value` before printing, whose maps
//! are ordered by key, so identical runs give byte-identical files. Wall time
//! is the only non-deterministic field and is absent unless requested.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::hull::{HullConfig, HullResult, InitStrategy, IterationTrace, ProcessingOrder};
use crate::points::{PointId, PointSet};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub input: InputSummary,
    pub config: ConfigEcho,
    pub extremes: IndexSet,
    /// Axis-extreme seeds found before the main loop.
    pub axis_seeds: IndexSet,
    pub counters: Counters,
    pub points: Vec<PointStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub source: String,
    /// 1-based input lines dropped as duplicates.
    pub dropped_lines: Vec<usize>,
    pub precentered: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub eps_zero: f64,
    pub eps_kkt: f64,
    pub eps_sign: f64,
    pub eps_tie: f64,
    /// Refinement budget of the simplex initialization.
    #[serde(rename = "K")]
    pub max_refine: usize,
    pub init: String,
    pub order: String,
}

/// The same ids as 0-based indices and as 1-based labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub count: usize,
    pub indices: Vec<usize>,
    pub labels: Vec<usize>,
}

impl IndexSet {
    pub fn new<'a>(ids: impl IntoIterator<Item = &'a PointId>) -> Self {
        let indices: Vec<usize> = ids.into_iter().map(|p| p.index()).collect::<BTreeSet<_>>().into_iter().collect();
        IndexSet { count: indices.len(), labels: indices.iter().map(|i| i + 1).collect(), indices }
    }

    pub fn ids(&self) -> BTreeSet<PointId> {
        self.indices.iter().map(|&i| PointId(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub total_qp_solves: usize,
    pub verification_solves: usize,
    pub points_processed: usize,
    pub growth_iterations: usize,
    pub refine_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointStats {
    pub index: usize,
    pub label: usize,
    pub initial_reference: Vec<usize>,
    pub final_reference: Vec<usize>,
    pub qp_solves: usize,
    pub growth_iterations: usize,
    pub refine_steps: usize,
    pub final_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepRecord>>,
}

/// One projection of a traced growth loop. Ids are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub distance: f64,
    pub added: Option<usize>,
    pub residual: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub mode: String,
    pub agrees: bool,
    /// Found by the oracle only.
    pub missing: IndexSet,
    /// Reported by the construction only.
    pub extra: IndexSet,
}

impl Verification {
    pub fn compare(mode: &str, found: &BTreeSet<PointId>, expected: &BTreeSet<PointId>) -> Self {
        let missing = IndexSet::new(expected.difference(found));
        let extra = IndexSet::new(found.difference(expected));
        Verification { mode: mode.to_owned(), agrees: missing.count == 0 && extra.count == 0, missing, extra }
    }
}

impl PointStats {
    fn from_trace(t: &IterationTrace, with_steps: bool) -> Self {
        let idx = |v: &[PointId]| v.iter().map(|p| p.index()).collect();
        PointStats {
            index: t.point.index(),
            label: t.point.label(),
            initial_reference: idx(&t.initial_reference),
            final_reference: idx(&t.final_reference),
            qp_solves: t.qp_solves,
            growth_iterations: t.growth_iterations(),
            refine_steps: t.refine_steps,
            final_distance: t.final_distance(),
            steps: with_steps.then(|| {
                t.steps
                    .iter()
                    .map(|s| StepRecord {
                        k: s.k,
                        distance: s.distance,
                        added: s.added.map(PointId::index),
                        residual: s.residual.clone(),
                    })
                    .collect()
            }),
        }
    }
}

impl ConfigEcho {
    pub fn new(config: &HullConfig) -> Self {
        let t = &config.tolerances;
        let init = match config.init {
            InitStrategy::Simplex => "simplex".to_owned(),
            InitStrategy::SingleSeed(None) => "single-seed".to_owned(),
            InitStrategy::SingleSeed(Some(p)) => format!("single-seed:{}", p.index()),
        };
        let order = match &config.order {
            ProcessingOrder::Index => "index".to_owned(),
            ProcessingOrder::Given(ids) => {
                format!("given:{}", ids.iter().map(|p| p.index().to_string()).collect::<Vec<_>>().join(","))
            }
        };
        ConfigEcho {
            eps_zero: t.eps_zero,
            eps_kkt: t.eps_kkt,
            eps_sign: t.eps_sign,
            eps_tie: t.eps_tie,
            max_refine: t.max_refine,
            init,
            order,
        }
    }
}

impl RunReport {
    /// Builds a report; per-step distances and residuals are kept only when
    /// `trace` is set.
    pub fn new(ps: &PointSet, input: InputSummary, config: &HullConfig, result: &HullResult, trace: bool) -> Self {
        debug_assert_eq!((input.n, input.m), (ps.len(), ps.dim()));
        RunReport {
            schema: SCHEMA_VERSION,
            input,
            config: ConfigEcho::new(config),
            extremes: IndexSet::new(&result.extreme_ids),
            axis_seeds: IndexSet::new(&result.seed.e_prime),
            counters: Counters {
                total_qp_solves: result.total_qp_solves,
                verification_solves: result.verification_solves,
                points_processed: result.traces.len(),
                growth_iterations: result.growth_iterations(),
                refine_steps: result.refine_steps(),
            },
            points: result.traces.iter().map(|t| PointStats::from_trace(t, trace)).collect(),
            verification: None,
            wall_seconds: None,
        }
    }

    /// Pretty, key-sorted JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }

    /// Writes through a temporary file in the target directory, so readers
    /// never observe a partial report.
    pub fn write_atomic(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomic(path.as_ref(), self.to_json()?.as_bytes())
    }
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
