//! Trial parallelism. `POWERTOUR_THREADS` caps the worker count; results
//! always come back in trial order.

use std::sync::OnceLock;

use rayon::prelude::*;

pub const THREADS_ENV: &str = "POWERTOUR_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("thread pool")
    })
}

/// `f(0), f(1), ..., f(count-1)`, evaluated in parallel.
pub fn par_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    pool().install(|| (0..count).into_par_iter().map(f).collect())
}

/// Seed of trial `t` in a run started from `seed`.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add(t as u64)
}
