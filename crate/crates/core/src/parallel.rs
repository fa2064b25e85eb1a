//! Thread-count control for the data-parallel sweeps.
//!
//! With the `parallel` feature disabled everything runs on the calling
//! thread and the cap is ignored.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HAMVOL_THREADS";

pub fn thread_cap_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs `f` on a dedicated pool of at most `cap` threads, or on the global
/// pool when `cap` is `None`. Falls back to the caller's thread if the pool
/// cannot be built.
#[cfg(feature = "parallel")]
pub fn run_capped<R, F>(cap: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match cap {
        None => f(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_capped<R, F>(_cap: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    f()
}
