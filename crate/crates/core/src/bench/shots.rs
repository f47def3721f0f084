use crate::translator::Shot;

use super::domains::DomainKind;
use super::generate::{generate_instances, SizeRange, TaskInstance};

/// Seed of the demonstration pool; disjoint from benchmark seeds by id.
pub const SHOT_SEED: u64 = 0x5107;

/// Matching demonstration lists: abstraction targets and full problem files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotSet {
    pub abstraction: Vec<Shot>,
    pub full_problem: Vec<Shot>,
}

impl ShotSet {
    pub fn from_instances(instances: &[TaskInstance]) -> Self {
        ShotSet {
            abstraction: instances
                .iter()
                .map(|i| Shot {
                    instruction: i.instruction.clone(),
                    target: i.abstraction_text.clone(),
                })
                .collect(),
            full_problem: instances
                .iter()
                .map(|i| Shot {
                    instruction: i.instruction.clone(),
                    target: i.problem_text.clone(),
                })
                .collect(),
        }
    }

    /// `k` demonstrations drawn from a fixed generator pool.
    pub fn for_domain(kind: DomainKind, k: usize) -> Self {
        let pool = generate_instances(kind, k, SizeRange::default_for(kind), SHOT_SEED)
            .expect("demonstration pool generates");
        ShotSet::from_instances(&pool)
    }
}
