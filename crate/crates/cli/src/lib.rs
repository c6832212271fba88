//! Command-line front end: quiver files in, canonical JSON reports out, with an optional
//! content-addressed cache of finished reports.

pub mod cache;
pub mod error;
pub mod execute;
pub mod json;
pub mod spec;
pub mod task;

pub use cache::{Cache, CachedReport};
pub use error::{CliError, CliResult};
pub use execute::execute_task;
pub use spec::{load_quiver_spec, QuiverSpec};
pub use task::{Command, TaskArgs, TaskDescriptor};

/// Bumped whenever a report format or an algorithm changes what a report contains.
pub const ARTIFACT_VERSION: &str = concat!("aql-", env!("CARGO_PKG_VERSION"), "+r1");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Disabled,
    Hit,
    Miss,
    /// A corrupt entry was discarded and the report recomputed.
    Recomputed,
}

/// Canonical report text for `task`, going through `cache` when given.
///
/// Corrupt entries are discarded with a warning on stderr; a failed store only warns.
pub fn run_task(task: &TaskDescriptor, cache: Option<&Cache>) -> CliResult<(String, CacheOutcome)> {
    let Some(cache) = cache else {
        return Ok((json::canonical(&execute_task(task)?), CacheOutcome::Disabled));
    };
    let outcome = match cache.lookup(task) {
        Ok(Some(entry)) => return Ok((entry.payload, CacheOutcome::Hit)),
        Ok(None) => CacheOutcome::Miss,
        Err(e @ CliError::CacheCorrupt { .. }) => {
            eprintln!("warning: {e}; recomputing");
            cache.discard(task)?;
            CacheOutcome::Recomputed
        }
        Err(e) => return Err(e),
    };
    let payload = json::canonical(&execute_task(task)?);
    if let Err(e) = cache.store(task, &payload) {
        eprintln!("warning: report not cached: {e}");
    }
    Ok((payload, outcome))
}
