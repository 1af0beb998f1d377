//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it (or with `Execution::Sequential`) they are plain loops.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` degrades to sequential when the feature is off.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// First index in `0..n` (smallest) for which `f` returns `Some`, with its
/// value.
pub fn find_first<R, F>(exec: Execution, n: u64, f: F) -> Option<(u64, R)>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        // Per-index work is cheap, so scan contiguous chunks sequentially.
        const CHUNK: u64 = 1024;
        return (0..n.div_ceil(CHUNK))
            .into_par_iter()
            .filter_map(|c| (c * CHUNK..n.min((c + 1) * CHUNK)).find_map(|i| f(i).map(|r| (i, r))))
            .find_first(|_| true);
    }
    let _ = exec;
    (0..n).find_map(|i| f(i).map(|r| (i, r)))
}

/// Runs `op` with at most `workers` threads; `None` uses the global pool.
pub fn with_workers<R: Send>(workers: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = workers {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(op);
        }
    }
    let _ = workers;
    op()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map(exec, &xs, |x| x * x)[999], 998001);
            assert_eq!(find_first(exec, 1000, |i| (i % 97 == 96).then_some(i)), Some((96, 96)));
            assert_eq!(find_first(exec, 10, |_| None::<u8>), None);
        }
        assert_eq!(with_workers(Some(2), || 7), 7);
    }
}
