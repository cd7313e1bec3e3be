use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Execution mode for assembly kernels.
///
/// Every kernel computes each output entry with the same sequential
/// arithmetic in both modes, so results are bit-identical.
#[derive(Clone, Default)]
pub enum Parallelism {
    #[default]
    Serial,
    Pool(Arc<rayon::ThreadPool>),
}

impl Parallelism {
    /// Dedicated pool with `threads` workers; `threads ≤ 1` yields `Serial`.
    pub fn with_threads(threads: usize) -> Result<Self> {
        if threads <= 1 {
            return Ok(Self::Serial);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build thread pool: {e}")))?;
        Ok(Self::Pool(Arc::new(pool)))
    }

    pub fn threads(&self) -> usize {
        match self {
            Self::Serial => 1,
            Self::Pool(p) => p.current_num_threads(),
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, Self::Pool(_))
    }

    /// `(0..n).map(f).collect()`, possibly fanned out over the pool.
    pub fn map_indices<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Self::Serial => (0..n).map(f).collect(),
            Self::Pool(pool) => pool.install(|| (0..n).into_par_iter().map(f).collect()),
        }
    }
}

impl fmt::Debug for Parallelism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Serial => write!(f, "Serial"),
            Self::Pool(p) => write!(f, "Pool({} threads)", p.current_num_threads()),
        }
    }
}
