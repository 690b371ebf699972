//! Library side of the `fprlab` command: instance files, subcommands and the
//! benchmark harness.

pub mod bench;
pub mod commands;
pub mod instance;

pub use bench::{run_bench, summarize, BenchConfig, ResultRow, Suite};
pub use commands::Globals;
pub use instance::{Instance, InstanceError, InstanceFile};

/// Size of the worker pool: `FPRLAB_THREADS` when set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("FPRLAB_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

/// Installs the global rayon pool, honoring `FPRLAB_THREADS`.
pub fn init_thread_pool() {
    if let Some(n) = thread_cap() {
        // a pool already built by the caller stays in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
