use std::collections::HashMap;

use crate::grounding::ActionId;

use super::schedule::rho_schedule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub weight: f64,
    pub conflicts: u32,
}

/// Symmetric pairwise compatibility weights with conflict counts.
///
/// Pairs that never conflicted are not stored and read as `w_init`.
#[derive(Debug, Clone)]
pub struct ConflictRecorder {
    pairs: HashMap<(ActionId, ActionId), PairStats>,
    w_init: f64,
    tau: f64,
    lower_bound: f64,
}

fn key(a: ActionId, b: ActionId) -> (ActionId, ActionId) {
    (a.min(b), a.max(b))
}

impl ConflictRecorder {
    pub fn new(w_init: f64, tau: f64, lower_bound: f64) -> Self {
        assert!(tau > 1.0, "tau must exceed 1");
        ConflictRecorder {
            pairs: HashMap::new(),
            w_init,
            tau,
            lower_bound,
        }
    }

    pub fn w_init(&self) -> f64 {
        self.w_init
    }

    pub fn lower_bound(&self) -> f64 {
        self.lower_bound
    }

    pub fn weight(&self, a: ActionId, b: ActionId) -> f64 {
        self.pairs.get(&key(a, b)).map_or(self.w_init, |p| p.weight)
    }

    pub fn conflicts(&self, a: ActionId, b: ActionId) -> u32 {
        self.pairs.get(&key(a, b)).map_or(0, |p| p.conflicts)
    }

    /// Pairs that have been penalized at least once.
    pub fn pairs(&self) -> impl Iterator<Item = ((ActionId, ActionId), PairStats)> + '_ {
        self.pairs.iter().map(|(k, v)| (*k, *v))
    }

    /// Sets a pair weight directly, clamped to `[lower_bound, w_init]`.
    pub fn set_weight(&mut self, a: ActionId, b: ActionId, weight: f64) {
        let w_init = self.w_init;
        let entry = self.pairs.entry(key(a, b)).or_insert(PairStats {
            weight: w_init,
            conflicts: 0,
        });
        entry.weight = weight.clamp(self.lower_bound, w_init);
    }

    /// Records a conflict between `i` and `k` at iteration `m`.
    ///
    /// The count is incremented first; the denominator uses the count
    /// clamped to `tau - 1`.
    pub fn penalize(&mut self, i: ActionId, k: ActionId, m: usize) {
        if i == k {
            return;
        }
        let (tau, lower, w_init) = (self.tau, self.lower_bound, self.w_init);
        let entry = self.pairs.entry(key(i, k)).or_insert(PairStats {
            weight: w_init,
            conflicts: 0,
        });
        entry.conflicts += 1;
        let eps = (entry.conflicts as f64).min(tau - 1.0);
        let penalty = rho_schedule(m) * tau / (tau - eps);
        entry.weight = (entry.weight - penalty).max(lower);
    }

    /// `sum of w(a, a')` over `a'` in `set` other than `a`.
    pub fn compatibility_weight(&self, a: ActionId, set: &[ActionId]) -> f64 {
        set.iter()
            .filter(|&&b| b != a)
            .map(|&b| self.weight(a, b))
            .sum()
    }

    /// Normalized compatibility weights over `set`; uniform when all are zero.
    pub fn sampling_distribution(&self, set: &[ActionId]) -> Vec<(ActionId, f64)> {
        let omegas: Vec<f64> = set
            .iter()
            .map(|&a| self.compatibility_weight(a, set))
            .collect();
        let total: f64 = omegas.iter().sum();
        if total <= 0.0 {
            let p = 1.0 / set.len() as f64;
            return set.iter().map(|&a| (a, p)).collect();
        }
        set.iter()
            .zip(omegas)
            .map(|(&a, w)| (a, w / total))
            .collect()
    }
}
