//! Configurable runner for the `gsp4-local` identity checks.

pub mod config;
pub mod report;
pub mod suites;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

pub use config::{ConfigError, Format, Suite, SuiteConfig, WeightRanges};
pub use report::{Record, Report, Status};
pub use suites::{cases, Case, Outcome};

/// Runs one case, converting panics into `error` records.
pub fn execute(case: &Case, timing: bool) -> Record {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (case.job)())).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| e.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Outcome::Error(format!("panicked: {msg}"))
    });
    let ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    let (status, lhs, rhs, detail) = match outcome {
        Outcome::Pass => (Status::Pass, None, None, None),
        Outcome::Fail { lhs, rhs } => (Status::Fail, Some(lhs), Some(rhs), None),
        Outcome::Error(e) => (Status::Error, None, None, Some(e)),
    };
    Record {
        suite: case.suite.name().to_string(),
        case: case.id.clone(),
        params: case.params.clone(),
        status,
        lhs,
        rhs,
        ms,
        detail,
    }
}

/// Validates `cfg` and runs every selected case on a pool of `cfg.parallelism` workers.
pub fn run(cfg: &SuiteConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let cases = cases(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let records = pool.install(|| cases.par_iter().map(|c| execute(c, cfg.timing)).collect());
    Ok(Report { records })
}

/// Serializes a report in the requested format.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
        Format::Human => report.to_human(),
    }
}
