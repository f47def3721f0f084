use serde::{Deserialize, Serialize};

/// Meta-search parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub pop_size: usize,
    /// Maximum individual length; `None` means half the action space.
    pub l_max: Option<usize>,
    pub max_iters: usize,
    /// Stop once the archive holds this many plans.
    pub archive_threshold: usize,
    pub tau: f64,
    pub lower_bound: f64,
    pub w_init: f64,
    /// Node expansions per individual per generation.
    pub budget: usize,
    pub seed: u64,
    /// Run local searches one after another on the calling thread.
    pub single_thread: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            pop_size: 20,
            l_max: None,
            max_iters: 100,
            archive_threshold: 2,
            tau: 200.0,
            lower_bound: 0.1,
            w_init: 1.0,
            budget: 10_000,
            seed: 0,
            single_thread: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.pop_size == 0 {
            return Err("population size must be at least 1".into());
        }
        if self.max_iters == 0 {
            return Err("max iterations must be at least 1".into());
        }
        if self.archive_threshold == 0 {
            return Err("archive threshold must be at least 1".into());
        }
        if self.tau <= 1.0 {
            return Err("tau must exceed 1".into());
        }
        if !(0.0 < self.lower_bound && self.lower_bound <= self.w_init) {
            return Err("lower bound must lie in (0, w_init]".into());
        }
        Ok(())
    }
}
