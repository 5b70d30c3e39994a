use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, ResourceExceeded};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

/// Caps applied to one search stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: DEFAULT_NODE_LIMIT,
            max_time: Some(DEFAULT_TIME_LIMIT),
            threads: None,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_nodes: u64::MAX,
            max_time: None,
            threads: None,
        }
    }

    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_threads(mut self, t: usize) -> Self {
        self.threads = Some(t);
        self
    }

    pub(crate) fn meter(&self, what: impl Into<String>) -> Meter {
        Meter {
            what: what.into(),
            nodes: AtomicU64::new(0),
            max_nodes: self.max_nodes,
            deadline: self.max_time.map(|d| Instant::now() + d),
        }
    }

    /// Runs `f` on a pool with the configured thread count.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

/// Shared node counter for one search stage.
pub(crate) struct Meter {
    what: String,
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Meter {
    /// Records `k` explored nodes and fails once a cap is crossed.
    pub fn tick(&self, k: u64) -> Result<(), Error> {
        let n = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        if n > self.max_nodes {
            return Err(self.exceeded(self.max_nodes, format!("{n} nodes explored")));
        }
        if n % 4096 < k {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(self.exceeded(self.max_nodes, "time limit reached".into()));
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exceeded(&self, cap: u64, detail: String) -> Error {
        Error::Resource(ResourceExceeded {
            what: self.what.clone(),
            cap,
            detail,
        })
    }
}
