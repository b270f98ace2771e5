//! Effort accounting for the exponential searches.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("effort budget exhausted")]
pub struct Exhausted;

#[derive(Debug)]
pub struct Budget {
    remaining: AtomicU64,
}

impl Budget {
    pub fn new(steps: u64) -> Self {
        Budget { remaining: AtomicU64::new(steps) }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn spend(&self, n: u64) -> Result<(), Exhausted> {
        self.remaining
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |r| r.checked_sub(n))
            .map(|_| ())
            .map_err(|_| Exhausted)
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }
}
