//! Two-stage language-to-plan pipeline: a few-shot translator that extracts
//! a minimal symbolic abstraction (objects, initial state, goal) and a
//! population-based planner that runs bounded A* inside small subsets of
//! the grounded action space.

pub mod bench;
pub mod grounding;
pub mod meta;
pub mod pddl;
pub mod search;
pub mod translator;

#[cfg(test)]
pub(crate) mod test_support;
