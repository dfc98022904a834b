//! Sequential/parallel execution switch.
//!
//! Every parallel code path maps over an indexed work list and returns results
//! in index order, so reductions performed afterwards are identical whichever
//! variant ran and however many workers it used.

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `jobs = None` uses the global pool.
    Parallel { jobs: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { jobs: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn with_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { jobs: Some(jobs) }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Execution::Sequential => "sequential".into(),
            Execution::Parallel { jobs: None } => "parallel".into(),
            Execution::Parallel { jobs: Some(j) } => format!("parallel({j})"),
        }
    }

    /// `items.iter().map(f).collect()`, possibly on a worker pool. Output order
    /// always follows input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => Ok(items.iter().map(f).collect()),
            Execution::Parallel { jobs } => par_map(*jobs, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(jobs: Option<usize>, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use crate::error::Error;
    use rayon::prelude::*;
    match jobs {
        None => Ok(items.par_iter().map(f).collect()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Inconsistent(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(|| items.par_iter().map(f).collect()))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(_jobs: Option<usize>, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    Ok(items.iter().map(f).collect())
}
