use rayon::prelude::*;

use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "HADAMARD_COORD_THREADS";

/// Worker cap from the environment: `None` leaves rayon's default, `Some(0)`
/// runs serially.
pub fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map_ordered<I, R, F>(items: &[I], f: F) -> CliResult<Vec<R>>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> R + Sync + Send,
{
    match threads_from_env()? {
        Some(0) => Ok(items.iter().map(f).collect()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
            Ok(pool.install(|| items.par_iter().map(&f).collect()))
        }
        None => Ok(items.par_iter().map(f).collect()),
    }
}
