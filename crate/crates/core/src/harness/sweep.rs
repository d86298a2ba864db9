//! Parallel one-dimensional parameter sweeps.

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Axis, BaseParams, Grid, Output, SweepSpec};
use crate::constants::TABLE_VERSION;
use crate::dynamics::{is_stable, steady_state};
use crate::entanglement::{report, EntanglementReport};
use crate::model::{
    build_drift, effective_params, solve_working_point, thermal_occupation, EffectiveParams,
    WorkingPoint,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Unstable,
    Failed,
}

/// Outcome at one grid value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub axis: f64,
    pub status: RowStatus,
    pub stable: bool,
    /// Max Re λ of the drift matrix, absent if it could not be formed.
    pub max_real_part: Option<f64>,
    /// Present only for stable points whose solve succeeded.
    pub report: Option<EntanglementReport>,
    pub params: Option<EffectiveParams>,
    /// Reason the point produced no report.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub crate_version: &'static str,
    pub constants: &'static str,
    pub spec: SweepSpec,
    pub unstable: usize,
    /// Points that failed for any reason other than instability.
    pub failures: usize,
    /// Seconds since the Unix epoch; left empty by [`run_sweep`] so output is reproducible.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn outputs(&self) -> &[Output] {
        &self.metadata.spec.outputs
    }

    /// Stable rows with a report.
    pub fn reports(&self) -> impl Iterator<Item = (f64, &EntanglementReport)> {
        self.rows
            .iter()
            .filter_map(|r| r.report.as_ref().map(|rep| (r.axis, rep)))
    }
}

/// Effective rates for a base parameter set, solving the working point in physical mode.
pub fn resolve(base: &BaseParams) -> Result<(EffectiveParams, Option<WorkingPoint>)> {
    match base {
        BaseParams::Physical(p) => {
            let w = solve_working_point(p)?;
            Ok((effective_params(p, &w), Some(w)))
        }
        BaseParams::Effective(e) => Ok((e.resolved(), None)),
    }
}

/// Stability check, steady state and all measures for one set of rates.
pub fn evaluate(e: &EffectiveParams) -> Result<EntanglementReport> {
    let ss = steady_state(e)?;
    report(&ss.solution.covariance, &ss.stability)
}

fn row_from(index: usize, axis: f64, params: Result<EffectiveParams>) -> SweepRow {
    let mut row = SweepRow {
        index,
        axis,
        status: RowStatus::Failed,
        stable: false,
        max_real_part: None,
        report: None,
        params: None,
        error: None,
    };
    let e = match params {
        Ok(e) => e,
        Err(Error::UnstableWorkingPoint { max_real_part }) => {
            row.status = RowStatus::Unstable;
            row.max_real_part = Some(max_real_part);
            row.error = Some("unstable".into());
            return row;
        }
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.params = Some(e);
    match evaluate(&e) {
        Ok(rep) => {
            row.status = RowStatus::Ok;
            row.stable = rep.stable;
            row.max_real_part = Some(rep.max_real_part);
            row.report = Some(rep);
        }
        Err(Error::Unstable { max_real_part }) => {
            row.status = RowStatus::Unstable;
            row.max_real_part = Some(max_real_part);
            row.error = Some("unstable".into());
        }
        Err(err) => {
            row.max_real_part = is_stable(&build_drift(&e)).ok().map(|s| s.max_real_part);
            row.error = Some(err.to_string());
        }
    }
    row
}

/// Rates `e` with the swept quantity replaced by `value`.
pub fn substitute(e: &EffectiveParams, axis: Axis, value: f64) -> EffectiveParams {
    let mut out = *e;
    match axis {
        Axis::Delta => out.delta = value * e.omega_m,
        Axis::DeltaA => out.delta_a = value * e.omega_m,
        Axis::Temperature => out.nbar = thermal_occupation(value, e.omega_m),
    }
    out
}

/// Evaluates explicit axis values in parallel, keeping input order.
///
/// With `hold_working_point` the working point is solved once at `base` and
/// only the swept rate changes between points. The working point does not
/// depend on temperature, so temperature sweeps take this path regardless.
pub fn run_points(
    base: &BaseParams,
    axis: Axis,
    values: &[f64],
    hold_working_point: bool,
) -> Vec<SweepRow> {
    let hold = hold_working_point || axis == Axis::Temperature;
    let fixed = hold.then(|| resolve(base).map(|(e, _)| e));
    values
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let params = match &fixed {
                Some(Ok(e)) => Ok(substitute(e, axis, x)),
                Some(Err(err)) => Err(err.clone()),
                None => resolve(&base.with_axis(axis, x)).map(|(e, _)| e),
            };
            row_from(i, x, params)
        })
        .collect()
}

/// Runs a sweep on a pool of `workers` threads (0 picks the rayon default).
///
/// Rows come back in grid order whatever the thread count, so the emitted
/// files are identical for identical input.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    let values = spec.grid.values();
    let rows = pool.install(|| run_points(&spec.base, spec.axis, &values, spec.hold_working_point));
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let (unstable, failures) = (count(RowStatus::Unstable), count(RowStatus::Failed));
    if failures > 0 {
        log::warn!("{failures} of {} sweep points failed", rows.len());
    }
    Ok(SweepResult {
        metadata: SweepMetadata {
            crate_version: env!("CARGO_PKG_VERSION"),
            constants: TABLE_VERSION,
            spec: spec.clone(),
            unstable,
            failures,
            timestamp: None,
        },
        rows,
    })
}

/// Grid helper for callers that build a spec by hand.
pub fn spec(base: BaseParams, axis: Axis, start: f64, stop: f64, count: usize) -> SweepSpec {
    SweepSpec {
        base,
        axis,
        grid: Grid { start, stop, count },
        hold_working_point: false,
        outputs: Output::ALL.to_vec(),
    }
}
