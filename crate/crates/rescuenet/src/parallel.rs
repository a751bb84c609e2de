use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use rescuenet_core::Executor;

/// Runs Monte Carlo iterations on a dedicated rayon pool. Results come back
/// in iteration order, so estimates do not depend on the worker count.
pub struct RayonExecutor {
    pool: ThreadPool,
}

impl RayonExecutor {
    /// `None` uses every available core.
    pub fn new(workers: Option<usize>) -> Self {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = workers {
            builder = builder.num_threads(n.max(1));
        }
        Self {
            pool: builder.build().expect("failed to start worker pool"),
        }
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for RayonExecutor {
    fn run<T, F>(&self, count: u64, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        self.pool
            .install(|| (0..count).into_par_iter().map(&task).collect())
    }
}
