//! JSON reports for the geometry of a finite group and one of its conjugacy
//! classes.

pub mod cayley;
pub mod encode;
pub mod error;
pub mod job;
pub mod report;

use std::sync::Arc;

use fingeom::group::dihedral;
use fingeom::FiniteGroup;
use serde_json::Value;

pub use cayley::{export_cayley, load_cayley, parse_cayley, CayleyFile};
pub use error::CliError;
pub use job::{Command, GroupSource, JobSpec};
pub use report::Context;

pub fn resolve_group(source: &GroupSource) -> Result<Arc<FiniteGroup>, CliError> {
    match source {
        GroupSource::Dihedral(n) => Ok(dihedral(*n)?),
        GroupSource::Cayley(path) => load_cayley(path).map(Arc::new),
    }
}

/// Runs one job and returns the full report.
pub fn run(job: &JobSpec) -> Result<Value, CliError> {
    let group = resolve_group(&job.group)?;
    let context = Context::new(job.clone(), group)?;
    let mut report = context.header();
    report[job.command.name()] = context.section(job.command)?;
    Ok(report)
}

/// Serializes a report with a trailing newline. Object keys are sorted, so
/// output is byte-stable.
pub fn render(report: &Value, pretty: bool) -> String {
    let mut out = if pretty {
        serde_json::to_string_pretty(report)
    } else {
        serde_json::to_string(report)
    }
    .expect("JSON values serialize");
    out.push('\n');
    out
}
