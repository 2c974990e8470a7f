//! Multi-threaded drivers. Results are identical to the sequential ones for
//! every worker count.

use rayon::prelude::*;
use rayon::ThreadPool;
use syndetic_core::pipeline::Executor;
use syndetic_core::sets::{ps_scale_2d, SetError, WindowSet2D};
use syndetic_core::vdw::{VdwError, VdwResult, VdwSearch};

/// Runs search subtrees and class scoring on a private thread pool.
///
/// With one worker nothing is spawned and the core's sequential paths run.
pub struct Parallel {
    workers: usize,
    pool: Option<ThreadPool>,
}

impl Parallel {
    pub fn new(workers: usize) -> Self {
        let workers = workers.max(1);
        let pool = (workers > 1)
            .then(|| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .ok()
            })
            .flatten();
        Parallel { workers, pool }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn vdw_number(&self, r: usize, k: usize, budget: u64) -> Result<VdwResult, VdwError> {
        self.vdw(&VdwSearch::new(r, k)?, budget)
    }
}

impl Executor for Parallel {
    fn vdw(&self, search: &VdwSearch, budget: u64) -> Result<VdwResult, VdwError> {
        let Some(pool) = &self.pool else {
            return search.run(budget);
        };
        search.run_with(budget, |s, prefixes, remaining| {
            pool.install(|| {
                prefixes
                    .par_iter()
                    .map(|p| s.subtree(p, remaining))
                    .collect()
            })
        })
    }

    fn class_scales(&self, classes: &[&WindowSet2D], r2d: usize) -> Result<Vec<usize>, SetError> {
        match &self.pool {
            None => classes.iter().map(|m| ps_scale_2d(m, r2d)).collect(),
            Some(pool) => {
                pool.install(|| classes.par_iter().map(|m| ps_scale_2d(m, r2d)).collect())
            }
        }
    }
}
