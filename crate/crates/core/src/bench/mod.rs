//! Benchmark domains, instance generation, end-to-end pipeline runs and
//! reporting.

mod baseline;
mod domains;
mod generate;
mod oracle;
mod pipeline;
mod report;
mod shots;
mod suite;

pub use baseline::{baseline_plan, BaselineOutcome};
pub use domains::DomainKind;
pub use generate::{generate_instances, instance_id, GenerationError, SizeRange, TaskInstance};
pub use oracle::{bfs_oracle, OracleResult, ORACLE_STATE_CAP};
pub use pipeline::{
    classify_result, compute_pscr, gold_client, run_instance, BenchConfig, PipelineTrace,
    ResultClass, RunRecord,
};
pub use report::{aggregate, EmptyInput, Report, Summary};
pub use shots::{ShotSet, SHOT_SEED};
pub use suite::{generate_suite, run_suite, write_fixtures, BenchError, SuiteResult};
