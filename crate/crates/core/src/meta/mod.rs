//! Population-based search over action subspaces: individuals encode
//! subsets of the grounded actions, local A* runs inside each subset, and
//! crossover/mutation guided by pairwise conflict weights reshapes the
//! subsets between generations.

mod config;
mod engine;
mod individual;
mod operators;
mod recorder;
mod schedule;

pub use config::SearchConfig;
pub use engine::{
    run, run_observed, ArchiveEntry, GenerationLog, GenerationState, IndividualLog, PlanResult,
    RunMetrics,
};
pub use individual::{init_population, Individual, LengthBounds};
pub use operators::{crossover, mutate, union_genes};
pub use recorder::{ConflictRecorder, PairStats};
pub use schedule::{mutation_rate, rho_schedule};
