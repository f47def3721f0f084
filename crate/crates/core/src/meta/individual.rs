use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::grounding::ActionId;

/// Variable-length list of distinct action ids; its gene set is the
/// action subspace searched by one local search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub genes: Vec<ActionId>,
}

impl Individual {
    pub fn new(genes: Vec<ActionId>) -> Self {
        Individual { genes }
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn contains(&self, a: ActionId) -> bool {
        self.genes.contains(&a)
    }
}

/// Inclusive individual length window after clamping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthBounds {
    pub lo: usize,
    pub hi: usize,
}

impl LengthBounds {
    /// `[min(3, n), max(lo, l_max)]` capped at `n`, then widened so every
    /// critical action fits.
    pub fn new(action_count: usize, l_max: Option<usize>, critical: usize) -> Self {
        let lo = action_count.min(3);
        let hi = l_max.unwrap_or(action_count / 2).max(lo).min(action_count);
        LengthBounds {
            lo: lo.max(critical),
            hi: hi.max(critical),
        }
    }

    pub fn contains(&self, len: usize) -> bool {
        (self.lo..=self.hi).contains(&len)
    }
}

/// Every individual holds all critical actions plus distinct random fillers
/// up to a length drawn uniformly from `bounds`.
pub fn init_population<R: Rng>(
    action_count: usize,
    critical: &[ActionId],
    bounds: LengthBounds,
    pop_size: usize,
    rng: &mut R,
) -> Vec<Individual> {
    let fillers: Vec<ActionId> = (0..action_count)
        .filter(|a| !critical.contains(a))
        .collect();
    (0..pop_size)
        .map(|_| {
            let len = rng.gen_range(bounds.lo..=bounds.hi);
            let extra = len.saturating_sub(critical.len());
            let mut genes = critical.to_vec();
            genes.extend(fillers.choose_multiple(rng, extra));
            Individual::new(genes)
        })
        .collect()
}
