use hadamard_core::chain::Executor;
use rayon::prelude::*;

/// Runs tasks on the rayon thread pool. Results come back in index order,
/// so output matches [`hadamard_core::chain::Sequential`] exactly.
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl Executor for Parallel {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}
