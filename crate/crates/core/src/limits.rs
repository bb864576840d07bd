use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Caps on configuration-space searches. Exceeding either one turns a
/// would-be runaway search into [`Error::Resource`].
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_configs: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_configs: 1_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_configs: usize::MAX,
            deadline: None,
        }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub(crate) fn check(&self, visited: usize) -> Result<()> {
        if visited > self.max_configs {
            return Err(Error::Resource(format!(
                "explored more than {} configurations",
                self.max_configs
            )));
        }
        if visited.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Resource("time budget exhausted".into()));
                }
            }
        }
        Ok(())
    }
}
