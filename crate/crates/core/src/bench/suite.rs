use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::translator::{ChatClient, ClientError, MockClient};

use super::domains::DomainKind;
use super::generate::{generate_instances, GenerationError, SizeRange, TaskInstance};
use super::pipeline::{gold_client, run_instance, BenchConfig, RunRecord};
use super::report::{aggregate, EmptyInput, Report};
use super::shots::ShotSet;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Generation(#[from] GenerationError),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error(transparent)]
    Empty(#[from] EmptyInput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub instances: Vec<TaskInstance>,
    pub records: Vec<RunRecord>,
    pub report: Report,
}

pub fn generate_suite(
    kinds: &[DomainKind],
    count: usize,
    seed: u64,
) -> Result<Vec<TaskInstance>, GenerationError> {
    let mut instances = Vec::new();
    for &kind in kinds {
        instances.extend(generate_instances(
            kind,
            count,
            SizeRange::default_for(kind),
            seed,
        )?);
    }
    Ok(instances)
}

/// Runs `instances` through the pipeline; `client` defaults to the gold
/// abstractions.
pub fn run_suite(
    instances: Vec<TaskInstance>,
    config: &BenchConfig,
    client: Option<&dyn ChatClient>,
) -> Result<SuiteResult, BenchError> {
    let gold = gold_client(&instances);
    let client = client.unwrap_or(&gold);
    let mut shot_sets: Vec<(DomainKind, ShotSet)> = Vec::new();
    let mut records = Vec::with_capacity(instances.len());
    for inst in &instances {
        if !shot_sets.iter().any(|(k, _)| *k == inst.domain) {
            shot_sets.push((
                inst.domain,
                ShotSet::for_domain(inst.domain, config.translator.shot_count),
            ));
        }
        let shots = &shot_sets.iter().find(|(k, _)| *k == inst.domain).unwrap().1;
        records.push(run_instance(inst, shots, config, client)?);
    }
    let report = aggregate(&records)?;
    Ok(SuiteResult {
        instances,
        records,
        report,
    })
}

/// Writes domain files, gold problems, instructions, mock completions
/// (`<id>.completion.txt`) and a JSON manifest under `dir`.
pub fn write_fixtures(dir: &Path, instances: &[TaskInstance]) -> io::Result<()> {
    fs::create_dir_all(dir.join("domains"))?;
    fs::create_dir_all(dir.join("problems"))?;
    fs::create_dir_all(dir.join("instructions"))?;
    for kind in DomainKind::ALL {
        fs::write(
            dir.join("domains").join(format!("{kind}.pddl")),
            kind.domain_text(),
        )?;
    }
    for inst in instances {
        fs::write(
            dir.join("problems").join(format!("{}.pddl", inst.id)),
            &inst.problem_text,
        )?;
        fs::write(
            dir.join("instructions").join(format!("{}.txt", inst.id)),
            format!("{}\n", inst.instruction),
        )?;
        fs::write(
            MockClient::fixture_path(dir, &inst.id),
            &inst.abstraction_text,
        )?;
    }
    let manifest = serde_json::to_string_pretty(instances).map_err(io::Error::other)?;
    fs::write(dir.join("instances.json"), manifest)
}
